function fib(n) {
  if (n < 2) return n;
  return fib(n - 1) + fib(n - 2);
}
print(fib(5));
let buf = [];
for (let i = 0; i < 4; i++) {
  for (let j = 0; j < 3; j++) {
    buf.push(i + j);
  }
}
print(len(buf), join(buf, "-"));
