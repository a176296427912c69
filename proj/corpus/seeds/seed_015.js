var count = 0;
function bump(by) {
  count = count + by;
  return count;
}
bump(2);
bump(5);
print(count);
