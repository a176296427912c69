let k = 100;
let items = k * 100 + 10;
print(items - k / 2);
