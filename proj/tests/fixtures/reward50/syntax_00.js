1+;
