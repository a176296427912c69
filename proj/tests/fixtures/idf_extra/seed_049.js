let a = [0, 0, 0];
a[1] = 2;
a[3] = "x";
print(a, a.length);
function slice2(s, n) {
  if (s.length > n) {
    return s.substr(0, n);
  }
  return s;
}
print(slice2("abc", 5));
