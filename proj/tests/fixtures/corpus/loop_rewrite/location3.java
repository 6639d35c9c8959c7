{
    init();
    int total = 0;
    int k = 0;
    while (k < 5) {
        total = total + k;
        k = k + 1;
    }
    foo.close();
}
