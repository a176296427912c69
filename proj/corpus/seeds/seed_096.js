let u = "plain";
for (let i = 0; i < 3; i++) {
  print(decodeURI(u));
}
