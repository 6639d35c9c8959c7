{
    begin(session);
    init(options.timeout());
    int total = 0;
    for (int idx = 0; idx < 7; idx = idx + 1) {
        total = total + idx;
        session.persist(total);
        session.report();
    }
    notifyDone();
    foo.close();
}
