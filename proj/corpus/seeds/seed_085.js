let r = range(20);
let sum = 0;
for (let i = 0; i < len(r); i++) {
  if (r[i] % 2 == 0) continue;
  sum = sum + r[i];
  if (sum > 37) break;
}
print(sum);
let parts = "xyz".split(" ");
parts.push("end");
let last = parts.pop();
print(parts.join("+"), last, parts.slice(0, 1));
