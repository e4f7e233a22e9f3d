// expect: count_down=2
void count_down(int n)
{
    while (n > 0) {
        n--;
    }
}
