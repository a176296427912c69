var acc = 0;
var k = 11;
while (k > 0) {
  acc += k % 3;
  k--;
}
print(acc);
