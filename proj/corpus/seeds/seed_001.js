let val = "hello world";
print(val.length, val.charAt(3), val.toUpperCase());
print(substr(val, 3, 1));
