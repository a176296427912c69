print(abs(-3.5), min(42, 3.5), floor(2 / 3), sqrt(7));
print(str(10) + "!", num("27"), parseInt("17", 2));
let r = range(11);
let sum = 0;
for (let i = 0; i < len(r); i++) {
  if (r[i] % 2 == 0) continue;
  sum = sum + r[i];
  if (sum > 11) break;
}
print(sum);
