int main() {
  int i, n;
  n = __VERIFIER_nondet_int();
  i = 0;
  while (i < n) {
    i = i + 1;
  }
  if (i < 0) __VERIFIER_error();
  return 0;
}
