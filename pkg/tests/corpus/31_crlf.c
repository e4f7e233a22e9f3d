// expect: crlf=2
int crlf(int a)
{
    for (; a > 0; a--) { }
    return a;
}
