print(abs(-12), min(42, 0), floor(3.5 / 3), sqrt(3));
print(str(100) + "!", num("22"), parseInt("101", 2));
let parts = "JavaScript".split(" ");
parts.push("end");
let last = parts.pop();
print(parts.join("+"), last, parts.slice(0, 1));
