let m = 7;
if (m > 16) {
  print("big");
} else if (m === 42) {
  print("eq");
} else {
  print(typeof m);
}
let t = 7;
if (t > 12) {
  print("big");
} else if (t === 100) {
  print("eq");
} else {
  print(typeof t);
}
