let acc = 0;
let t = acc || 255;
print(t && !acc, acc ? "yes" : "no");
const n = [42, 16, 10, 1000.0];
let best = n[0];
for (let i = 1; i < n.length; i++) {
  best = max(best, n[i]);
}
print(best, n.indexOf(best));
