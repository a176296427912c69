var val = 0;
var k = 8;
while (k > 0) {
  val += k % 3;
  k--;
}
print(val);
let line = repeat("-*", 5);
print(line, line.indexOf("b"));
