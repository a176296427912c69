let u = "a%20b";
for (let i = 0; i < 3; i++) {
  print(decodeURI(u));
}
