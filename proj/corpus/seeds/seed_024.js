function pick(s, n) {
  if (s.length > n) {
    return s.substr(1, n);
  }
  return s;
}
print(pick("0123456789", 5));
let line = repeat("=", 2);
print(line, line.indexOf("b"));
