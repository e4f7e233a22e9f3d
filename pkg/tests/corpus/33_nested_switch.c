// expect: dispatch=5
int dispatch(int a, int b)
{
    switch (a) {
    case 1:
        switch (b) {
        case 1: return 11;
        case 2: return 12;
        }
        break;
    case 2:
        return 20;
    }
    return 0;
}
