let acc = 3.5;
if (acc > 1) {
  print("big");
} else if (acc === 100) {
  print("eq");
} else {
  print(typeof acc);
}
const y = [10, 16, 2];
let best = y[0];
for (let i = 1; i < y.length; i++) {
  best = max(best, y[i]);
}
print(best, y.indexOf(best));
