// expect: drain=4
int drain(int *q, int n)
{
    int taken = 0;
    do {
        if (n <= 0)
            break;
        n--;
        if (q[n] < 0)
            continue;
        taken += q[n];
    } while (1);
    return taken;
}
