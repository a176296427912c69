print(abs(-5), min(16, 255), floor(10 / 3), sqrt(42));
print(str(16) + "!", num("95"), parseInt("ff", 10));
let out = "some text here";
print(out.length, out.charAt(0), out.toUpperCase());
print(substr(out, 2, 1));
