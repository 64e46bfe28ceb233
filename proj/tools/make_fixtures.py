#!/usr/bin/env python3
"""Writes the explicit support fixtures under fixtures/.

Each binomial power is expanded term by term; the subtracted pure powers only
change coefficients (2 - 1 = 1), so they stay in the support.
"""
import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def binomial_terms(n, i, ei, j, ej, exp):
    """Exponent vectors of (z_i^ei + z_j^ej)^exp in n variables."""
    out = []
    for k in range(exp + 1):
        v = [0] * n
        v[i] += ei * k
        v[j] += ej * (exp - k)
        out.append(v)
    return out


def check(weights, degree, monomials):
    for m in monomials:
        assert len(m) == len(weights)
        assert sum(k * a for k, a in zip(m, weights)) == degree, m


def dump(name, weights, degree, monomials):
    check(weights, degree, monomials)
    rows = ",\n".join("    " + json.dumps(m) for m in monomials)
    text = '{\n  "weights": %s,\n  "degree": %d,\n  "monomials": [\n%s\n  ]\n}\n' % (
        json.dumps(weights), degree, rows)
    (ROOT / name).write_text(text)


def x60_fourfold():
    # P(3,4,5,4,15,30), z_3..z_5 only through G
    w = [3, 4, 5, 4, 15, 30]
    n = len(w)
    mons = [[17, 1, 1, 0, 0, 0], [1, 13, 1, 0, 0, 0]]
    mons += binomial_terms(n, 0, 4, 1, 3, 5)
    mons += binomial_terms(n, 0, 5, 2, 3, 4)
    mons += binomial_terms(n, 1, 5, 2, 4, 3)
    # G general of degree 60 in weights (4, 15, 30): every monomial
    for a in range(16):
        for b in range(5):
            for c in range(3):
                if 4 * a + 15 * b + 30 * c == 60:
                    mons.append([0, 0, 0, a, b, c])
    dump("x60_p3454_15_30.json", w, 60, mons)


def x60_smooth():
    w = [1] * 49 + [3, 4, 5]
    n = len(w)
    p, q, r = 49, 50, 51
    mons = []
    for k in range(49):
        v = [0] * n
        v[k] = 60
        mons.append(v)
    m = [0] * n
    m[p], m[q], m[r] = 1, 13, 1
    mons.append(m)
    m = [0] * n
    m[p], m[q], m[r] = 2, 1, 10
    mons.append(m)
    mons += binomial_terms(n, p, 4, q, 3, 5)
    mons += binomial_terms(n, p, 5, r, 3, 4)
    mons += binomial_terms(n, q, 5, r, 4, 3)
    dump("x60_smooth_1_49_3_4_5.json", w, 60, mons)


if __name__ == "__main__":
    ROOT.mkdir(exist_ok=True)
    x60_fourfold()
    x60_smooth()
