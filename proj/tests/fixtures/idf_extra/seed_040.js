var buf = 0;
var k = 9;
while (k > 0) {
  buf += k % 3;
  k--;
}
print(buf);
