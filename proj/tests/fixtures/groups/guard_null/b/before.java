{
    open(db);
    db.commit();
    close(db);
}
