var count = 0;
function bump(by) {
  count = count + by;
  return count;
}
bump(5);
bump(4);
print(count);
let m = false;
let res = m || 5;
print(res && !m, m ? "yes" : "no");
