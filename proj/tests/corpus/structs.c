typedef struct point {
  int x;
  int y;
} point_t;

int main() {
  point_t p;
  point_t *pp = &p;
  p.x = 1;
  pp->y = 2;
  return p.x + pp->y;
}
