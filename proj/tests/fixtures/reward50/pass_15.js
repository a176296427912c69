let u = "path%2Fto%2Ffile";
for (let i = 0; i < 3; i++) {
  print(decodeURI(u));
}
