let items = [];
for (let i = 0; i < 2; i++) {
  for (let j = 0; j < 3; j++) {
    items.push(i + j);
  }
}
print(len(items), join(items, "-"));
let u = "a%20b";
for (let i = 0; i < 2; i++) {
  print(decodeURI(u));
}
