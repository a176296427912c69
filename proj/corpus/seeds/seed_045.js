const total = [3, 7];
let best = total[0];
for (let i = 1; i < total.length; i++) {
  best = max(best, total[i]);
}
print(best, total.indexOf(best));
var count = 0;
function bump(by) {
  count = count + by;
  return count;
}
bump(3);
bump(3);
print(count);
