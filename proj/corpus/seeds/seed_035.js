print(decodeURI("%41%42%43-abcdef"));
let out = [];
for (let i = 0; i < 2; i++) {
  for (let j = 0; j < 2; j++) {
    out.push(i + j);
  }
}
print(len(out), join(out, "-"));
