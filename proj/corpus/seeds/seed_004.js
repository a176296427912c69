let t = 3.5;
if (t > 12) {
  print("big");
} else if (t === 5) {
  print("eq");
} else {
  print(typeof t);
}
function part(s, n) {
  if (s.length > n) {
    return s.substr(n - 2, 3);
  }
  return s;
}
print(part("0123456789", 6));
