let y = 12;
if (y > 42) {
  print("big");
} else if (y === 5) {
  print("eq");
} else {
  print(typeof y);
}
let line = repeat("ab", 6);
print(line, line.indexOf("b"));
