{
    int m = 0;
    while (m < 9) {
        m = m + 1;
    }
    record(m);
    seal(m);
}
