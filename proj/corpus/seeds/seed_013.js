let val = 5;
let b = val * 255 + 0.25;
print(b - val / 8);
let line = repeat("ab", 3);
print(line, line.indexOf("b"));
