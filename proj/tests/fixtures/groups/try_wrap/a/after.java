{
    setup();
    warm(cache);
    try {
        risky(cfg);
    } catch (Exception e) {
        recover(e);
    }
    done();
}
