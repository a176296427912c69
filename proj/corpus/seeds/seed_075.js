let s = 12;
let res = s * 42 + 0;
print(res - s / 2);
