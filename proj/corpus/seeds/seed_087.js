let a = false;
let m = a || 100;
print(m && !a, a ? "yes" : "no");
