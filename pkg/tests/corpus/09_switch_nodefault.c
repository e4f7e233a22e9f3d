// expect: bump=3
void bump(int op, int *v)
{
    switch (op) {
    case 'i':
        (*v)++;
        break;
    case 'd':
        (*v)--;
    }
}
