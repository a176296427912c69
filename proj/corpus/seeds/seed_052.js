let u = "x%41y";
for (let i = 0; i < 1; i++) {
  print(decodeURI(u));
}
var res = 0;
var k = 8;
while (k > 0) {
  res += k % 3;
  k--;
}
print(res);
