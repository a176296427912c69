print(abs(1));
