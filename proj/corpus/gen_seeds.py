#!/usr/bin/env python3
# Copyright 2026 The covrl Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Generates toy-target seed programs from small templates.

usage: gen_seeds.py <covrl-toy> <outdir> <count> <seed>

Every emitted file is checked against the toy target and kept only if it
exits 0, so the output is a corpus of valid seeds. corpus/seeds was produced
with count 100 and seed 1.
"""

import os
import random
import subprocess
import sys

rng = random.Random(7)
names = ["a","b","c","n","x","y","s","t","acc","total","items","buf","k","m","out","val","res","tmp"]
words = ["hello world","fuzzing","covrl","alpha beta","some text here","abc","JavaScript","0123456789","xyz","quick brown fox"]
def num(): return str(rng.choice([0,1,2,3,5,7,10,12,16,42,100,255,3.5,0.25,1e3]))
def s(): return '"' + rng.choice(words) + '"'

T = []
def t(f): T.append(f); return f

@t
def arith():
    a,b = rng.sample(names,2)
    return f"let {a} = {num()};\nlet {b} = {a} * {num()} + {num()};\nprint({b} - {a} / {rng.choice([2,4,8])});\n"
@t
def strings():
    v = rng.choice(names)
    return f"let {v} = {s()};\nprint({v}.length, {v}.charAt({rng.randint(0,3)}), {v}.toUpperCase());\nprint(substr({v}, {rng.randint(0,3)}, {rng.randint(1,4)}));\n"
@t
def loop_push():
    v = rng.choice(["items","buf","out"]); n=rng.randint(2,6); m=rng.randint(2,4)
    return f"let {v} = [];\nfor (let i = 0; i < {n}; i++) {{\n  for (let j = 0; j < {m}; j++) {{\n    {v}.push(i + j);\n  }}\n}}\nprint(len({v}), join({v}, \"-\"));\n"
@t
def while_loop():
    v = rng.choice(names); n = rng.randint(3,12)
    return f"var {v} = 0;\nvar k = {n};\nwhile (k > 0) {{\n  {v} += k % 3;\n  k--;\n}}\nprint({v});\n"
@t
def func_sub():
    fn = rng.choice(["pick","part","head","slice2"])
    start = rng.choice(["0", "1", "2", "n - 2", "n - 1"])
    if "n -" in start:
        return f"function {fn}(s, n) {{\n  if (s.length > n) {{\n    return s.substr({start}, 3);\n  }}\n  return s;\n}}\nprint({fn}({s()}, {rng.randint(2,6)}));\n"
    return f"function {fn}(s, n) {{\n  if (s.length > n) {{\n    return s.substr({start}, n);\n  }}\n  return s;\n}}\nprint({fn}({s()}, {rng.randint(1,5)}));\n"
@t
def uri():
    esc = rng.choice(["a%20b","x%41y","plain","%7Bz%7D","%41bc%20defgh","path%2Fto%2Ffile"])
    if rng.random() < 0.3:
        return f"print(decodeURI(\"%41%42%43-abcdef\"));\n"
    return f"let u = \"{esc}\";\nfor (let i = 0; i < {rng.randint(1,3)}; i++) {{\n  print(decodeURI(u));\n}}\n"
@t
def arrays():
    v = rng.choice(names); xs = ", ".join(num() for _ in range(rng.randint(1,5)))
    return f"const {v} = [{xs}];\nlet best = {v}[0];\nfor (let i = 1; i < {v}.length; i++) {{\n  best = max(best, {v}[i]);\n}}\nprint(best, {v}.indexOf(best));\n"
@t
def cond():
    a = rng.choice(names)
    return f"let {a} = {num()};\nif ({a} > {num()}) {{\n  print(\"big\");\n}} else if ({a} === {num()}) {{\n  print(\"eq\");\n}} else {{\n  print(typeof {a});\n}}\n"
@t
def recursion():
    n = rng.randint(3,8)
    return f"function fib(n) {{\n  if (n < 2) return n;\n  return fib(n - 1) + fib(n - 2);\n}}\nprint(fib({n}));\n"
@t
def logic():
    a,b = rng.sample(names,2)
    return f"let {a} = {rng.choice(['true','false','null','0','1'])};\nlet {b} = {a} || {num()};\nprint({b} && !{a}, {a} ? \"yes\" : \"no\");\n"
@t
def builtins():
    return f"print(abs(-{num()}), min({num()}, {num()}), floor({num()} / 3), sqrt({num()}));\nprint(str({num()}) + \"!\", num(\"{rng.randint(0,99)}\"), parseInt(\"{rng.choice(['ff','17','101'])}\", {rng.choice([16,10,2])}));\n"
@t
def split_join():
    return f"let parts = {s()}.split(\" \");\nparts.push(\"end\");\nlet last = parts.pop();\nprint(parts.join(\"+\"), last, parts.slice(0, 1));\n"
@t
def range_sum():
    n = rng.randint(2,20)
    return f"let r = range({n});\nlet sum = 0;\nfor (let i = 0; i < len(r); i++) {{\n  if (r[i] % 2 == 0) continue;\n  sum = sum + r[i];\n  if (sum > {rng.randint(10,50)}) break;\n}}\nprint(sum);\n"
@t
def repeat_str():
    return f"let line = repeat(\"{rng.choice(['=','ab','-*'])}\", {rng.randint(1,6)});\nprint(line, line.indexOf(\"b\"));\n"
@t
def nested_arr():
    return f"let grid = [[1, 2], [3, 4], [{num()}, {num()}]];\nlet t = 0;\nfor (let i = 0; i < grid.length; i++) {{\n  for (let j = 0; j < grid[i].length; j++) {{\n    t += grid[i][j];\n  }}\n}}\nprint(t, typeof grid[0][1]);\n"
@t
def counter_fn():
    return f"var count = 0;\nfunction bump(by) {{\n  count = count + by;\n  return count;\n}}\nbump({rng.randint(1,5)});\nbump({rng.randint(1,5)});\nprint(count);\n"
@t
def assign_index():
    return f"let a = [0, 0, 0];\na[{rng.randint(0,2)}] = {num()};\na[3] = \"x\";\nprint(a, a.length);\n"

def run(toy, code, path):
    with open(path, "w") as f:
        f.write(code)
    r = subprocess.run([toy, path], capture_output=True)
    return r.returncode, r.stderr.decode()


def generate(toy, out, count, seed, exclude=()):
    rng.seed(seed)
    os.makedirs(out, exist_ok=True)
    i = 0
    seen = set(exclude)
    while i < count:
        f = T[i % len(T)] if i < len(T) else rng.choice(T)
        code = f()
        if rng.random() < 0.5:
            code = T[rng.randrange(len(T))]() + code
        if code in seen:
            continue
        p = os.path.join(out, f"seed_{i:03d}.js")
        rc, err = run(toy, code, p)
        if rc != 0:
            os.remove(p)
            print("reject", rc, err.strip()[:80], file=sys.stderr)
            continue
        seen.add(code)
        i += 1


if __name__ == "__main__":
    generate(sys.argv[1], sys.argv[2], int(sys.argv[3]), int(sys.argv[4]))
