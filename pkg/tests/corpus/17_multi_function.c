// expect: max=2 min=2 abs_diff=1
static int max(int a, int b) { if (a > b) return a; return b; }
static int min(int a, int b) { if (a < b) return a; return b; }

int abs_diff(int a, int b)
{
    return max(a, b) - min(a, b);
}
