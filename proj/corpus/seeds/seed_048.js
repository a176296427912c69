let items = [];
for (let i = 0; i < 3; i++) {
  for (let j = 0; j < 2; j++) {
    items.push(i + j);
  }
}
print(len(items), join(items, "-"));
