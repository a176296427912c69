var count = 0;
function bump(by) {
  count = count + by;
  return count;
}
bump(1);
bump(2);
print(count);
let r = range(7);
let sum = 0;
for (let i = 0; i < len(r); i++) {
  if (r[i] % 2 == 0) continue;
  sum = sum + r[i];
  if (sum > 49) break;
}
print(sum);
