{
    setUp(context);
    someMethod(context);
    print(context);
    flush();
    finish();
}
