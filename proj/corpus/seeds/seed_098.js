function fib(n) {
  if (n < 2) return n;
  return fib(n - 1) + fib(n - 2);
}
print(fib(7));
let k = 16;
if (k > 10) {
  print("big");
} else if (k === 2) {
  print("eq");
} else {
  print(typeof k);
}
