let line = repeat("-*", 1);
print(line, line.indexOf("b"));
let acc = 100;
let n = acc * 7 + 3;
print(n - acc / 2);
