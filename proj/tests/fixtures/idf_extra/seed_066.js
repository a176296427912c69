let r = range(13);
let sum = 0;
for (let i = 0; i < len(r); i++) {
  if (r[i] % 2 == 0) continue;
  sum = sum + r[i];
  if (sum > 23) break;
}
print(sum);
let res = 5;
if (res > 0) {
  print("big");
} else if (res === 1) {
  print("eq");
} else {
  print(typeof res);
}
