function slice2(s, n) {
  if (s.length > n) {
    return s.substr(n - 2, 3);
  }
  return s;
}
print(slice2("xyz", 4));
let out = [];
for (let i = 0; i < 4; i++) {
  for (let j = 0; j < 2; j++) {
    out.push(i + j);
  }
}
print(len(out), join(out, "-"));
