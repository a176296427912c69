let parts = "fuzzing".split(" ");
parts.push("end");
let last = parts.pop();
print(parts.join("+"), last, parts.slice(0, 1));
print(abs(-42), min(0.25, 0), floor(12 / 3), sqrt(3));
print(str(255) + "!", num("51"), parseInt("17", 2));
