var count = 0;
function bump(by) {
  count = count + by;
  return count;
}
bump(5);
bump(5);
print(count);
