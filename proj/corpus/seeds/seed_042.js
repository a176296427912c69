print(abs(-0), min(0, 0), floor(3.5 / 3), sqrt(1000.0));
print(str(5) + "!", num("92"), parseInt("101", 10));
let tmp = 0;
let acc = tmp || 7;
print(acc && !tmp, tmp ? "yes" : "no");
