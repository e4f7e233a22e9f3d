// expect: tricky=2
/* if (this) { while (that) } */
int tricky(const char *s)
{
    const char *msg = "if (x) { for (;;) }"; // while (1)
    if (s[0] == '{')
        return 1; /* case 1: */
    return msg[0] == '}';
}
