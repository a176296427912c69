let k = "quick brown fox";
print(k.length, k.charAt(2), k.toUpperCase());
print(substr(k, 2, 2));
