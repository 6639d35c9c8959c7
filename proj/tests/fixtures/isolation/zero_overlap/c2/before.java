{
    try {
        int q = 0;
    } catch (Exception e) {
        int r = 1;
    }
}
