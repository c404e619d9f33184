int fact(int n) {
  if (n <= 1) return 1;
  return n * fact(n - 1);
}

int main() {
  int r = fact(5);
  if (r != 120) __VERIFIER_error();
  return 0;
}
