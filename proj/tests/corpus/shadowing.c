int f(int a) {
  int b = a;
  return b;
}

int main() {
  int a = 3;
  int b = f(a);
  {
    int a = b;
    b = a + 1;
  }
  return a + b;
}
