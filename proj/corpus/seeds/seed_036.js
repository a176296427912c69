var count = 0;
function bump(by) {
  count = count + by;
  return count;
}
bump(2);
bump(5);
print(count);
print(abs(-42), min(16, 0.25), floor(5 / 3), sqrt(7));
print(str(7) + "!", num("43"), parseInt("ff", 10));
