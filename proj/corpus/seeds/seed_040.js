let line = repeat("=", 1);
print(line, line.indexOf("b"));
var b = 0;
var k = 6;
while (k > 0) {
  b += k % 3;
  k--;
}
print(b);
