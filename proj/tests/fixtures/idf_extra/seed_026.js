function head(s, n) {
  if (s.length > n) {
    return s.substr(2, n);
  }
  return s;
}
print(head("some text here", 5));
