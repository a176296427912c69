let y = 1;
let t = y * 3 + 0;
print(t - y / 8);
