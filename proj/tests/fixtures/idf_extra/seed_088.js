var count = 0;
function bump(by) {
  count = count + by;
  return count;
}
bump(1);
bump(2);
print(count);
let res = 100;
let items = res * 16 + 1000.0;
print(items - res / 2);
