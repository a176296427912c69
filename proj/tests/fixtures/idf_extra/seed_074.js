let u = "plain";
for (let i = 0; i < 1; i++) {
  print(decodeURI(u));
}
