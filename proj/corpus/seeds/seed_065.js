let tmp = false;
let buf = tmp || 255;
print(buf && !tmp, tmp ? "yes" : "no");
let a = [0, 0, 0];
a[0] = 5;
a[3] = "x";
print(a, a.length);
