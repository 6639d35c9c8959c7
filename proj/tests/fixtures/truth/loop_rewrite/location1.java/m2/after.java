{
    init(cfg, 99);
    data.prepare();
    assert isActive(cfg);
    int total = 0;
    for (int c = 0; c < 99; c = c + 1) {
        total = total + c;
        archive(total);
    }
    notifyDone();
    foo.close();
}
