let c = false;
let y = c || 5;
print(y && !c, c ? "yes" : "no");
let acc = 5;
let t = acc * 1 + 3.5;
print(t - acc / 8);
