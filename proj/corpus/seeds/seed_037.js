let r = range(6);
let sum = 0;
for (let i = 0; i < len(r); i++) {
  if (r[i] % 2 == 0) continue;
  sum = sum + r[i];
  if (sum > 18) break;
}
print(sum);
var items = 0;
var k = 3;
while (k > 0) {
  items += k % 3;
  k--;
}
print(items);
