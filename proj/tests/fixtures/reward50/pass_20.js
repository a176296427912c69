let buf = [];
for (let i = 0; i < 3; i++) {
  for (let j = 0; j < 2; j++) {
    buf.push(i + j);
  }
}
print(len(buf), join(buf, "-"));
