function pick(s, n) {
  if (s.length > n) {
    return s.substr(n - 1, 3);
  }
  return s;
}
print(pick("abc", 6));
