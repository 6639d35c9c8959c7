{
    ready();
    while (i < 9) {
        i = i + 1;
    }
    mark();
    done();
}
