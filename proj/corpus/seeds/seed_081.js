let r = range(12);
let sum = 0;
for (let i = 0; i < len(r); i++) {
  if (r[i] % 2 == 0) continue;
  sum = sum + r[i];
  if (sum > 46) break;
}
print(sum);
var out = 0;
var k = 10;
while (k > 0) {
  out += k % 3;
  k--;
}
print(out);
