function fib(n) {
  if (n < 2) return n;
  return fib(n - 1) + fib(n - 2);
}
print(fib(6));
let a = [0, 0, 0];
a[2] = 10;
a[3] = "x";
print(a, a.length);
