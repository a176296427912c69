let total = "hello world";
print(total.length, total.charAt(0), total.toUpperCase());
print(substr(total, 0, 4));
var out = 0;
var k = 7;
while (k > 0) {
  out += k % 3;
  k--;
}
print(out);
