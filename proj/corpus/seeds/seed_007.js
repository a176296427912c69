let n = 255;
if (n > 7) {
  print("big");
} else if (n === 1000.0) {
  print("eq");
} else {
  print(typeof n);
}
