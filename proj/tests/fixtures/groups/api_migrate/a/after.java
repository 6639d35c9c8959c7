{
    prepare();
    logger.info(msg);
    flush();
}
