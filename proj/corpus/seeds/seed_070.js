let items = [];
for (let i = 0; i < 6; i++) {
  for (let j = 0; j < 4; j++) {
    items.push(i + j);
  }
}
print(len(items), join(items, "-"));
