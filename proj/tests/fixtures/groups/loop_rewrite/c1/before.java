{
    sum = 0;
    init();
    int total = 0;
    int j = 0;
    while (j < 42) {
        total = total + j;
        j = j + 1;
    }
    for (int j = 0; j < 3; j = j + 1) {
        log(verbose());
    }
    foo.close();
}
