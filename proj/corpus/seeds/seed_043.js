let buf = [];
for (let i = 0; i < 6; i++) {
  for (let j = 0; j < 3; j++) {
    buf.push(i + j);
  }
}
print(len(buf), join(buf, "-"));
let grid = [[1, 2], [3, 4], [10, 7]];
let t = 0;
for (let i = 0; i < grid.length; i++) {
  for (let j = 0; j < grid[i].length; j++) {
    t += grid[i][j];
  }
}
print(t, typeof grid[0][1]);
