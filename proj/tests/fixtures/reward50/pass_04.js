var count = 0;
function bump(by) {
  count = count + by;
  return count;
}
bump(4);
bump(2);
print(count);
