let parts = "covrl".split(" ");
parts.push("end");
let last = parts.pop();
print(parts.join("+"), last, parts.slice(0, 1));
let u = "a%20b";
for (let i = 0; i < 2; i++) {
  print(decodeURI(u));
}
