int main() {
  int a[8];
  int i;
  for (i = 0; i < 8; i++) a[i] = i * i;
  int t = a[3];
  a[2] = t;
  return a[2] + a[3];
}
