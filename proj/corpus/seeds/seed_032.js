let r = range(11);
let sum = 0;
for (let i = 0; i < len(r); i++) {
  if (r[i] % 2 == 0) continue;
  sum = sum + r[i];
  if (sum > 42) break;
}
print(sum);
let line = repeat("-*", 2);
print(line, line.indexOf("b"));
