let out = [];
for (let i = 0; i < 4; i++) {
  for (let j = 0; j < 2; j++) {
    out.push(i + j);
  }
}
print(len(out), join(out, "-"));
function fib(n) {
  if (n < 2) return n;
  return fib(n - 1) + fib(n - 2);
}
print(fib(8));
