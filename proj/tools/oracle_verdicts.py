#!/usr/bin/env python3
"""Brute-force finite validity for the curated oracle formulas.

Independent of the C++ oracle: every model with carriers of size 1..BOUND is
enumerated directly and the formulas are Python predicates over it. The output
is frozen into tests/test_oracle.cpp.
"""
import itertools

BOUND = 2


class Fn:
    def __init__(self, dom, table):
        self.dom, self.table = dom, table

    def __call__(self, x):
        return self.table[self.dom.index(x)]

    def __eq__(self, other):
        return self.table == other.table

    def __hash__(self):
        return hash(self.table)


def values(ty, sizes):
    if ty == "o":
        return [False, True]
    if isinstance(ty, str):
        return list(range(sizes[ty]))
    dom, cod = values(ty[0], sizes), values(ty[1], sizes)
    return [Fn(dom, t) for t in itertools.product(cod, repeat=len(dom))]


def arrow(*tys):
    out = tys[-1]
    for t in reversed(tys[:-1]):
        out = (t, out)
    return out


def valid(types, consts, axioms, goal):
    for sizes in itertools.product(range(1, BOUND + 1), repeat=len(types)):
        env = dict(zip(types, sizes))
        every = lambda ty, p: all(p(v) for v in values(ty, env))
        some = lambda ty, p: any(p(v) for v in values(ty, env))
        names = list(consts)
        for interp in itertools.product(*(values(consts[n], env) for n in names)):
            m = dict(zip(names, interp))
            if all(ax(m, every, some) for ax in axioms) and not goal(m, every, some):
                return False
    return True


imp = lambda a, b: (not a) or b
a, o = "a", "o"
aa, ao, aao = arrow(a, a), arrow(a, o), arrow(a, a, o)

CASES = [
    ("excluded_middle", [a], {"p": ao}, [], lambda m, A, E: A(a, lambda x: m["p"](x) or not m["p"](x))),
    ("all_p", [a], {"p": ao}, [], lambda m, A, E: A(a, lambda x: m["p"](x))),
    ("singleton", [a], {}, [], lambda m, A, E: A(a, lambda x: A(a, lambda y: x == y))),
    ("nonempty", [a], {}, [], lambda m, A, E: E(a, lambda x: x == x)),
    ("pigeonhole", [a], {}, [],
     lambda m, A, E: A(a, lambda x: A(a, lambda y: A(a, lambda z: x == y or y == z or x == z)))),
    ("involution", [a], {}, [], lambda m, A, E: A(aa, lambda f: A(a, lambda x: f(f(x)) == x))),
    ("inj_surj", [a], {}, [],
     lambda m, A, E: A(aa, lambda f: imp(A(a, lambda x: A(a, lambda y: imp(f(x) == f(y), x == y))),
                                         A(a, lambda y: E(a, lambda x: f(x) == y))))),
    ("refl_sym_trans", [a], {"r": aao},
     [lambda m, A, E: A(a, lambda x: m["r"](x)(x)),
      lambda m, A, E: A(a, lambda x: A(a, lambda y: imp(m["r"](x)(y), m["r"](y)(x))))],
     lambda m, A, E: A(a, lambda x: A(a, lambda y: A(a, lambda z: imp(m["r"](x)(y), imp(m["r"](y)(z), m["r"](x)(z))))))),
    ("per_not_refl", [a], {"r": aao},
     [lambda m, A, E: A(a, lambda x: A(a, lambda y: imp(m["r"](x)(y), m["r"](y)(x)))),
      lambda m, A, E: A(a, lambda x: A(a, lambda y: A(a, lambda z: imp(m["r"](x)(y), imp(m["r"](y)(z), m["r"](x)(z))))))],
     lambda m, A, E: A(a, lambda x: m["r"](x)(x))),
    ("serial_per_refl", [a], {"r": aao},
     [lambda m, A, E: A(a, lambda x: A(a, lambda y: imp(m["r"](x)(y), m["r"](y)(x)))),
      lambda m, A, E: A(a, lambda x: A(a, lambda y: A(a, lambda z: imp(m["r"](x)(y), imp(m["r"](y)(z), m["r"](x)(z)))))),
      lambda m, A, E: A(a, lambda x: E(a, lambda y: m["r"](x)(y)))],
     lambda m, A, E: A(a, lambda x: m["r"](x)(x))),
    ("witness", [a], {"p": ao, "c": a}, [lambda m, A, E: m["p"](m["c"])],
     lambda m, A, E: E(a, lambda x: m["p"](x))),
    ("witness_all", [a], {"p": ao, "c": a}, [lambda m, A, E: m["p"](m["c"])],
     lambda m, A, E: A(a, lambda x: m["p"](x))),
    ("leibniz", [a], {}, [],
     lambda m, A, E: A(a, lambda x: A(a, lambda y: imp(A(ao, lambda q: imp(q(x), q(y))), x == y)))),
    ("bool_cases", [], {}, [],
     lambda m, A, E: A(arrow(o, o), lambda q: imp(q(True) and q(False), A(o, lambda b: q(b))))),
    ("cantor", [a], {}, [],
     lambda m, A, E: E(arrow(a, ao), lambda f: A(ao, lambda g: E(a, lambda x: f(x) == g)))),
    ("injection_misses", [a, "b"], {"f": arrow(a, "b")},
     [lambda m, A, E: A(a, lambda x: A(a, lambda y: imp(m["f"](x) == m["f"](y), x == y)))],
     lambda m, A, E: E("b", lambda y: A(a, lambda x: m["f"](x) != y))),
    ("surjection_image", [a, "b"], {"f": arrow(a, "b")},
     [lambda m, A, E: A("b", lambda y: E(a, lambda x: m["f"](x) == y))],
     lambda m, A, E: A(arrow("b", o), lambda g: imp(A(a, lambda x: g(m["f"](x))), A("b", lambda y: g(y))))),
    ("peirce", [], {}, [],
     lambda m, A, E: A(o, lambda p: A(o, lambda q: imp(imp(imp(p, q), p), p)))),
    ("converse", [], {}, [],
     lambda m, A, E: A(o, lambda p: A(o, lambda q: imp(imp(p, q), imp(q, p))))),
    ("extensionality", [a], {}, [],
     lambda m, A, E: A(aa, lambda f: A(aa, lambda g: A(a, lambda x: f(x) == g(x)) == (f == g)))),
]

if __name__ == "__main__":
    for name, types, consts, axioms, goal in CASES:
        print(name, "valid" if valid(types, consts, axioms, goal) else "counterexample")
