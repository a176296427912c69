let a = [0, 0, 0];
a[0] = 16;
a[3] = "x";
print(a, a.length);
const b = [100, 10, 255, 100];
let best = b[0];
for (let i = 1; i < b.length; i++) {
  best = max(best, b[i]);
}
print(best, b.indexOf(best));
