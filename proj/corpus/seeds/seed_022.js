let line = repeat("=", 3);
print(line, line.indexOf("b"));
var a = 0;
var k = 7;
while (k > 0) {
  a += k % 3;
  k--;
}
print(a);
