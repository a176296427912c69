function fib(n) {
  if (n < 2) return n;
  return fib(n - 1) + fib(n - 2);
}
print(fib(7));
let y = 255;
let res = y * 2 + 255;
print(res - y / 2);
