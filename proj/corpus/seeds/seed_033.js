var count = 0;
function bump(by) {
  count = count + by;
  return count;
}
bump(1);
bump(3);
print(count);
