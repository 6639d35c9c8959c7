{
    open(res);
    if (res.ok()) {
        res.write(payload);
    }
    close(res);
}
