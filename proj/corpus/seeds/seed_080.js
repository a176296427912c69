let a = [0, 0, 0];
a[1] = 0;
a[3] = "x";
print(a, a.length);
let line = repeat("-*", 6);
print(line, line.indexOf("b"));
