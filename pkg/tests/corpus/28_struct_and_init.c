// expect: area=2
struct rect { int w; int h; };
static const int table[] = { 1, 2, 3 };

int area(struct rect r)
{
    struct rect copy = { 0, 0 };
    copy = r;
    if (copy.w < 0) copy.w = -copy.w;
    return copy.w * copy.h + table[0];
}
