let acc = 42;
let val = acc * 255 + 1000.0;
print(val - acc / 4);
