{
    ready();
    while (more()) {
        step();
    }
    mark();
    done();
}
