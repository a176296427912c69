let items = 1;
if (items > 16) {
  print("big");
} else if (items === 42) {
  print("eq");
} else {
  print(typeof items);
}
