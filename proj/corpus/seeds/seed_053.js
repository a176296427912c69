print(abs(-5), min(1, 255), floor(16 / 3), sqrt(0.25));
print(str(1000.0) + "!", num("77"), parseInt("17", 16));
