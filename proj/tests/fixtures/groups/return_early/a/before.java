{
    validate(x);
    assert x.ok();
    run(x);
}
