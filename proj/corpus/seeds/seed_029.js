let tmp = 42;
let b = tmp * 0.25 + 3;
print(b - tmp / 8);
let total = 0;
let y = total || 42;
print(y && !total, total ? "yes" : "no");
