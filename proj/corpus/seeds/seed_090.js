let acc = "xyz";
print(acc.length, acc.charAt(0), acc.toUpperCase());
print(substr(acc, 3, 1));
function slice2(s, n) {
  if (s.length > n) {
    return s.substr(2, n);
  }
  return s;
}
print(slice2("0123456789", 2));
