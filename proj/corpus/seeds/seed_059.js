function fib(n) {
  if (n < 2) return n;
  return fib(n - 1) + fib(n - 2);
}
print(fib(6));
let buf = "quick brown fox";
print(buf.length, buf.charAt(1), buf.toUpperCase());
print(substr(buf, 1, 2));
