function pick(s, n) {
  if (s.length > n) {
    return s.substr(1, n);
  }
  return s;
}
print(pick("0123456789", 4));
let c = 2;
let buf = c * 3.5 + 3.5;
print(buf - c / 4);
