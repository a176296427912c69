let s = false;
let res = s || 3;
print(res && !s, s ? "yes" : "no");
