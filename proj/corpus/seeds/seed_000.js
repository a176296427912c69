let r = range(8);
let sum = 0;
for (let i = 0; i < len(r); i++) {
  if (r[i] % 2 == 0) continue;
  sum = sum + r[i];
  if (sum > 16) break;
}
print(sum);
let x = 5;
let c = x * 1 + 12;
print(c - x / 4);
