var s = 0;
var k = 12;
while (k > 0) {
  s += k % 3;
  k--;
}
print(s);
let a = [0, 0, 0];
a[0] = 10;
a[3] = "x";
print(a, a.length);
