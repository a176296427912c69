let a = [0][3];
