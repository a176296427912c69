let r = range(5);
let sum = 0;
for (let i = 0; i < len(r); i++) {
  if (r[i] % 2 == 0) continue;
  sum = sum + r[i];
  if (sum > 20) break;
}
print(sum);
