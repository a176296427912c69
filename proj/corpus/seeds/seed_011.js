let parts = "0123456789".split(" ");
parts.push("end");
let last = parts.pop();
print(parts.join("+"), last, parts.slice(0, 1));
