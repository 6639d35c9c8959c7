{
    try {
        state.count = start();
        init(verbose());
        assert isValid(data);
        int total = 0;
        for (int k = 0; k < 42; k = k + 1) {
            total = total + k;
            updateValue(data);
            printValue(data);
        }
        report(total);
        foo.close();
    } catch (Exception e) {
        handle(e);
    }
}
