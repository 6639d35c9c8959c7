{
    read(data);
    parse(data);
    emit(data);
}
