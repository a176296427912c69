let y = 1;
let out = y || 100;
print(out && !y, y ? "yes" : "no");
