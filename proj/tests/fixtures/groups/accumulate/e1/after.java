{
    int n = 0;
    while (n < 9) {
        n = n + 1;
    }
    trace(n);
    seal(n);
}
