let buf = 0;
let val = buf || 0.25;
print(val && !buf, buf ? "yes" : "no");
