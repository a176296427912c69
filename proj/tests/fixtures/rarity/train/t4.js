print(abs(4));
var c = [1];
