let total = "some text here";
print(total.length, total.charAt(1), total.toUpperCase());
print(substr(total, 0, 2));
