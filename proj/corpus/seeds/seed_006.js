const n = [100, 255];
let best = n[0];
for (let i = 1; i < n.length; i++) {
  best = max(best, n[i]);
}
print(best, n.indexOf(best));
