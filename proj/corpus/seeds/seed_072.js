let line = repeat("ab", 2);
print(line, line.indexOf("b"));
