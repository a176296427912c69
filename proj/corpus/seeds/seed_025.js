let line = repeat("-*", 2);
print(line, line.indexOf("b"));
