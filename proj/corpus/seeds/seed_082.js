let acc = 3;
let res = acc * 1000.0 + 12;
print(res - acc / 8);
var count = 0;
function bump(by) {
  count = count + by;
  return count;
}
bump(1);
bump(4);
print(count);
