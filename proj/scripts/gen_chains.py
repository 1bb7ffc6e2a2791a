#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Emit core/data/chains.json: hard-part exponentiation programs.

Each program raises a cyclotomic element A to d' = c(x) * (p^(2m) + p^m + 1) / r
with m = k/3. The identity is checked symbolically before writing.
"""
import json
import pathlib
import sys

import sympy as sp

x = sp.symbols("x")

FAMILIES = {
    9: (((x + 1) ** 2 + ((x - 1) ** 2 * (2 * x**3 + 1) ** 2) / 3) / 4, (x**6 + x**3 + 1) / 3),
    15: ((x**12 - 2 * x**11 + x**10 + x**7 - 2 * x**6 + x**5 + x**2 + x + 1) / 3,
         x**8 - x**7 + x**5 - x**4 + x**3 - x + 1),
    27: ((x - 1) ** 2 * (x**18 + x**9 + 1) / 3 + x, (x**18 + x**9 + 1) / 3),
}


class Program:
    def __init__(self):
        self.ops = []

    def emit(self, op, dst, **kw):
        self.ops.append({"op": op, "dst": dst, **kw})
        return dst


def k9():
    g = Program()
    g.emit("pow_xm1", "b", src="A")
    g.emit("pow_xm1", "c", src="b")
    g.emit("cinv", "k2", src="c")
    g.emit("pow_x", "k1", src="k2")
    g.emit("pow_x", "k0", src="k1")
    g.emit("pow_x", "t", src="k0")
    g.emit("cinv", "k5", src="t")
    g.emit("pow_x", "k4", src="k5")
    g.emit("pow_x", "t", src="k4")
    g.emit("sqr", "a2", src="A")
    g.emit("mul", "t", a="t", b="a2")
    g.emit("mul", "k3", a="t", b="A")
    frobenius_sum(g, ["k0", "k1", "k2", "k3", "k4", "k5"])
    return g, 1, 3


def k15():
    g = Program()
    g.emit("pow_xm1", "b", src="A")
    g.emit("pow_xm1", "c", src="b")
    g.emit("pow_x", "cx", src="c")
    g.emit("pow_x", "cx2", src="cx")
    g.emit("mul", "t", a="cx2", b="cx")
    g.emit("mul", "t", a="t", b="c")
    g.emit("cinv", "k2", src="t")
    g.emit("pow_x", "k1", src="k2")
    g.emit("pow_x", "k0", src="k1")
    g.emit("pow_x", "t", src="k0")
    g.emit("cinv", "k9", src="t")
    g.emit("pow_x", "k8", src="k9")
    g.emit("pow_x", "k7", src="k8")
    g.emit("pow_x", "k6", src="k7")
    g.emit("pow_x", "t", src="k6")
    g.emit("sqr", "a2", src="A")
    g.emit("mul", "t", a="t", b="a2")
    g.emit("mul", "k5", a="t", b="A")
    g.emit("mul", "m", a="k2", b="k5")
    g.emit("mul", "m", a="m", b="k8")
    g.emit("mul", "t", a="k1", b="k7")
    g.emit("cinv", "t", src="t")
    g.emit("mul", "k4", a="m", b="t")
    g.emit("mul", "t", a="k0", b="k6")
    g.emit("mul", "t", a="t", b="k9")
    g.emit("cinv", "t", src="t")
    g.emit("mul", "k3", a="m", b="t")
    frobenius_sum(g, [f"k{i}" for i in range(10)])
    return g, 3, 3


def k27():
    # d = 3 + (x-1)^2 (p^9 + x^9 + 1) sum_{i<9} x^(8-i) p^i
    g = Program()
    g.emit("pow_xm1", "b", src="A", capture_square="a2")
    g.emit("pow_xm1", "b", src="b")
    prev = "b"
    for j in range(1, 10):
        prev = g.emit("pow_x", f"bx{j}", src=prev)
    g.emit("frob", "t", src="b", power=9)
    g.emit("mul", "c", a="bx9", b="b")
    g.emit("mul", "c", a="c", b="t")
    prev = "c"
    for j in range(1, 9):
        prev = g.emit("pow_x", f"c{j}", src=prev)
    terms = {0: "c8"}
    for i in range(1, 9):
        terms[i] = g.emit("frob", f"f{i}", src=f"c{8 - i}" if i < 8 else "c", power=i)
    acc = terms[0]
    for i in range(1, 9):
        acc = g.emit("mul", "out", a=acc, b=terms[i])
    g.emit("mul", "t", a="a2", b="A")
    g.emit("mul", "out", a="out", b="t")
    return g, 1, 0


def frobenius_sum(g, names):
    acc = names[0]
    for i, n in enumerate(names[1:], start=1):
        f = g.emit("frob", f"f{i}", src=n, power=i)
        acc = g.emit("mul", "out", a=acc, b=f)


def exponent(ops, k):
    p = FAMILIES[k][0]
    reg = {"A": sp.Integer(1)}
    for o in ops:
        if o["op"] in ("pow_x", "pow_xm1"):
            s = reg[o["src"]]
            if "capture_square" in o:
                reg[o["capture_square"]] = 2 * s
            reg[o["dst"]] = s * (x if o["op"] == "pow_x" else x - 1)
        elif o["op"] == "mul":
            reg[o["dst"]] = reg[o["a"]] + reg[o["b"]]
        elif o["op"] == "sqr":
            reg[o["dst"]] = 2 * reg[o["src"]]
        elif o["op"] == "cinv":
            reg[o["dst"]] = -reg[o["src"]]
        elif o["op"] == "frob":
            reg[o["dst"]] = reg[o["src"]] * p ** o["power"]
    return reg["out"]


def main():
    out = {}
    for k, build in ((9, k9), (15, k15), (27, k27)):
        g, scale, xpow = build()
        p, r = FAMILIES[k]
        m = k // 3
        d = sp.cancel((p ** (2 * m) + p**m + 1) / r)
        if sp.fraction(sp.together(d))[1].free_symbols:
            sys.exit(f"k={k}: r does not divide the cyclotomic factor")
        target = sp.expand(scale * x**xpow * d)
        got = sp.expand(exponent(g.ops, k))
        if sp.simplify(got - target) != 0:
            sys.exit(f"k={k}: chain exponent does not match")
        out[f"k{k}"] = {"multiplier": {"scale": scale, "x_power": xpow}, "ops": g.ops}
    path = pathlib.Path(__file__).resolve().parent.parent / "core" / "data" / "chains.json"
    lines = ["{"]
    for n, (name, prog) in enumerate(out.items()):
        lines.append(f'  "{name}": {{')
        lines.append(f'    "multiplier": {json.dumps(prog["multiplier"])},')
        lines.append('    "ops": [')
        ops = [f"      {json.dumps(o)}" for o in prog["ops"]]
        lines.append(",\n".join(ops))
        lines.append("    ]")
        lines.append("  }" + ("," if n + 1 < len(out) else ""))
    lines.append("}")
    path.write_text("\n".join(lines) + "\n")
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
