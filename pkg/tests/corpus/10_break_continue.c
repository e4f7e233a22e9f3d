// expect: first_negative=4
int first_negative(const int *a, int n)
{
    int i;
    for (i = 0; i < n; i++) {
        if (a[i] == 0)
            continue;
        if (a[i] < 0)
            break;
    }
    return i;
}
