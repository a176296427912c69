let u = "x%41y";
for (let i = 0; i < 1; i++) {
  print(decodeURI(u));
}
let grid = [[1, 2], [3, 4], [42, 42]];
let t = 0;
for (let i = 0; i < grid.length; i++) {
  for (let j = 0; j < grid[i].length; j++) {
    t += grid[i][j];
  }
}
print(t, typeof grid[0][1]);
