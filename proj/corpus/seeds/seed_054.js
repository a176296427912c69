function pick(s, n) {
  if (s.length > n) {
    return s.substr(2, n);
  }
  return s;
}
print(pick("quick brown fox", 5));
