var count = 0;
function bump(by) {
  count = count + by;
  return count;
}
bump(3);
bump(2);
print(count);
var val = 0;
var k = 7;
while (k > 0) {
  val += k % 3;
  k--;
}
print(val);
