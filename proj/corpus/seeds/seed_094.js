let a = [0, 0, 0];
a[2] = 7;
a[3] = "x";
print(a, a.length);
function fib(n) {
  if (n < 2) return n;
  return fib(n - 1) + fib(n - 2);
}
print(fib(3));
