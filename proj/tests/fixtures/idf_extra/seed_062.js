function slice2(s, n) {
  if (s.length > n) {
    return s.substr(n - 1, 3);
  }
  return s;
}
print(slice2("some text here", 2));
let tmp = "JavaScript";
print(tmp.length, tmp.charAt(3), tmp.toUpperCase());
print(substr(tmp, 1, 3));
