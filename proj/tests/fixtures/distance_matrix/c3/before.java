{
    betaOne();
    betaTwo();
    betaThree();
    delta();
    echo();
    hotel();
}
