let a = [0, 0, 0];
a[1] = 1;
a[3] = "x";
print(a, a.length);
let x = "some text here";
print(x.length, x.charAt(3), x.toUpperCase());
print(substr(x, 1, 3));
