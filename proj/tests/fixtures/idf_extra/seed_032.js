let items = [];
for (let i = 0; i < 2; i++) {
  for (let j = 0; j < 2; j++) {
    items.push(i + j);
  }
}
print(len(items), join(items, "-"));
function pick(s, n) {
  if (s.length > n) {
    return s.substr(n - 2, 3);
  }
  return s;
}
print(pick("JavaScript", 3));
