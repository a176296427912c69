let res = "fuzzing";
print(res.length, res.charAt(2), res.toUpperCase());
print(substr(res, 0, 3));
