const c = [0, 1000.0, 12];
let best = c[0];
for (let i = 1; i < c.length; i++) {
  best = max(best, c[i]);
}
print(best, c.indexOf(best));
let a = [0, 0, 0];
a[2] = 2;
a[3] = "x";
print(a, a.length);
