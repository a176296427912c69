let buf = [];
for (let i = 0; i < 4; i++) {
  for (let j = 0; j < 3; j++) {
    buf.push(i + j);
  }
}
print(len(buf), join(buf, "-"));
print(abs(-1), min(42, 42), floor(3.5 / 3), sqrt(1000.0));
print(str(10) + "!", num("9"), parseInt("101", 2));
