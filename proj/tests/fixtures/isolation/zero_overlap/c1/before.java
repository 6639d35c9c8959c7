{
    alpha();
}
