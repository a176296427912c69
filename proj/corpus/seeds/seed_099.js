let line = repeat("=", 3);
print(line, line.indexOf("b"));
print(abs(-255), min(3, 5), floor(42 / 3), sqrt(255));
print(str(3) + "!", num("84"), parseInt("ff", 2));
