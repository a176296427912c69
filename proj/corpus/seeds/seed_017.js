let val = "abc";
print(val.length, val.charAt(1), val.toUpperCase());
print(substr(val, 3, 4));
let k = 3.5;
let res = k * 2 + 16;
print(res - k / 8);
