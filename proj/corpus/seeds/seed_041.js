var m = 0;
var k = 9;
while (k > 0) {
  m += k % 3;
  k--;
}
print(m);
let grid = [[1, 2], [3, 4], [2, 100]];
let t = 0;
for (let i = 0; i < grid.length; i++) {
  for (let j = 0; j < grid[i].length; j++) {
    t += grid[i][j];
  }
}
print(t, typeof grid[0][1]);
