let a = [0, 0, 0];
a[1] = 0;
a[3] = "x";
print(a, a.length);
let r = range(16);
let sum = 0;
for (let i = 0; i < len(r); i++) {
  if (r[i] % 2 == 0) continue;
  sum = sum + r[i];
  if (sum > 20) break;
}
print(sum);
