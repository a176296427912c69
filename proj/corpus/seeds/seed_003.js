let k = 10;
let s = k * 255 + 0;
print(s - k / 8);
var items = 0;
var k = 3;
while (k > 0) {
  items += k % 3;
  k--;
}
print(items);
