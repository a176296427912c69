print(decodeURI("abc%4"));
