// expect: add=1
int add(int a, int b)
{
    int c = a + b;
    c = c * 2;
    return c;
}
