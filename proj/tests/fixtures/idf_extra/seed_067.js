function slice2(s, n) {
  if (s.length > n) {
    return s.substr(1, n);
  }
  return s;
}
print(slice2("some text here", 3));
print(abs(-7), min(1, 7), floor(12 / 3), sqrt(7));
print(str(2) + "!", num("63"), parseInt("17", 10));
