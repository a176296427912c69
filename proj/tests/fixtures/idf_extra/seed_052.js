let line = repeat("-*", 6);
print(line, line.indexOf("b"));
function fib(n) {
  if (n < 2) return n;
  return fib(n - 1) + fib(n - 2);
}
print(fib(6));
