let tmp = true;
let out = tmp || 7;
print(out && !tmp, tmp ? "yes" : "no");
let grid = [[1, 2], [3, 4], [100, 5]];
let t = 0;
for (let i = 0; i < grid.length; i++) {
  for (let j = 0; j < grid[i].length; j++) {
    t += grid[i][j];
  }
}
print(t, typeof grid[0][1]);
