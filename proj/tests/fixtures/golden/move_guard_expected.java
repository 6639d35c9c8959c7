{
    setUp(foo);
    if (isEnabled()) {
        someMethod(foo);
        foo.run();
    }
    flush();
    finish();
}
