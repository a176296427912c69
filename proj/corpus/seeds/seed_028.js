function part(s, n) {
  if (s.length > n) {
    return s.substr(0, n);
  }
  return s;
}
print(part("some text here", 1));
