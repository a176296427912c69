let u = "%41bc%20defgh";
for (let i = 0; i < 2; i++) {
  print(decodeURI(u));
}
