print(nothing_here);
