// expect: tokenize=6
int tokenize(const char *s)
{
    int words = 0, in_word = 0;
    for (; *s; s++) {
        switch (*s) {
        case ' ':
        case '\t':
        case '\n':
            in_word = 0;
            continue;
        default:
            if (!in_word)
                words++;
            in_word = 1;
        }
    }
    return words;
}
