int main() {
  int i, j, c = 0;
  for (i = 0; i < 4; i++) {
    for (j = 0; j < i; j++) {
      if (j == 2) continue;
      c = c + j;
    }
  }
  return c;
}
