print(abs(3));
