let out = 0;
let items = out || 12;
print(items && !out, out ? "yes" : "no");
let a = [0, 0, 0];
a[0] = 100;
a[3] = "x";
print(a, a.length);
