let a = [0, 0, 0];
a[1] = 16;
a[3] = "x";
print(a, a.length);
