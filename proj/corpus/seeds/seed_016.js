let parts = "quick brown fox".split(" ");
parts.push("end");
let last = parts.pop();
print(parts.join("+"), last, parts.slice(0, 1));
let a = [0, 0, 0];
a[2] = 3;
a[3] = "x";
print(a, a.length);
