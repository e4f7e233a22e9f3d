// expect: scan=4
int scan(const char *p)
{
    int n = 0;
top:
    if (*p == '\0')
        goto out;
    if (*p++ == ',')
        n++;
    if (n < 100)
        goto top;
out:
    return n;
}
