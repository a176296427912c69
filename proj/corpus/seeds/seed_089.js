let buf = 3.5;
let acc = buf * 255 + 10;
print(acc - buf / 8);
