let n = 16;
let a = n * 5 + 100;
print(a - n / 8);
const k = [5, 3.5];
let best = k[0];
for (let i = 1; i < k.length; i++) {
  best = max(best, k[i]);
}
print(best, k.indexOf(best));
