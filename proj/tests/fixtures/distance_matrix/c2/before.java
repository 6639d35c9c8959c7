{
    betaOne();
    betaTwo();
    betaThree();
    carol();
    echo();
    india();
}
