var acc = 0;
var k = 6;
while (k > 0) {
  acc += k % 3;
  k--;
}
print(acc);
