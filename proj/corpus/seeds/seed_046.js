print(abs(-3), min(10, 5), floor(0 / 3), sqrt(7));
print(str(2) + "!", num("40"), parseInt("101", 10));
let buf = [];
for (let i = 0; i < 2; i++) {
  for (let j = 0; j < 3; j++) {
    buf.push(i + j);
  }
}
print(len(buf), join(buf, "-"));
