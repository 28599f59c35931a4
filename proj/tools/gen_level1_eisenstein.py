#!/usr/bin/env python3
"""Writes a coefficient table for the level-1 Siegel Eisenstein series of weight 4.

Coefficients come from the Maass lift of the Jacobi Eisenstein series E_{4,1}
(Eichler-Zagier), whose coefficients are Cohen's numbers H(3, N):

    a(n, r, m) = -60480 * sum_{d | gcd(n, r, m)} d^3 H(3, (4nm - r^2) / d^2)

for the half-integral index [[n, r/2], [r/2, m]], with H(3, 0) = zeta(-5) = -1/252
and, for N > 0 with -N = D f^2 (D a fundamental discriminant),

    H(3, N) = L(-2, chi_D) sum_{d | f} mu(d) chi_D(d) d^2 sigma_5(f / d),
    L(-2, chi_D) = -B_{3, chi_D} / 3.

An integral Gram matrix [[a, b], [b, c]] is the index n = a, r = 2b, m = c.
Checks: a(0) = 1, a([[1,0],[0,0]]) = 240, a([[1,0],[0,1]]) = 30240.

Usage: gen_level1_eisenstein.py [--det-bound D] [--rank1-bound R] [-o FILE]
"""

import argparse
import math
import sys
from fractions import Fraction
from functools import lru_cache


def factorize(n):
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n):
    ds = [1]
    for p, e in factorize(n).items():
        ds = [d * p**i for d in ds for i in range(e + 1)]
    return sorted(ds)


def mobius(n):
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def sigma(n, k):
    return sum(d**k for d in divisors(n))


def kronecker(d, n):
    """Kronecker symbol (d / n) for n >= 1."""
    if n == 1:
        return 1
    result = 1
    for p, e in factorize(n).items():
        if p == 2:
            if d % 2 == 0:
                return 0
            v = 1 if d % 8 in (1, 7) else -1
        else:
            r = d % p
            if r == 0:
                return 0
            v = 1 if pow(r, (p - 1) // 2, p) == 1 else -1
        result *= v**e
    return result


def bernoulli3(x):
    return x**3 - Fraction(3, 2) * x**2 + Fraction(1, 2) * x


@lru_cache(maxsize=None)
def l_value(D):
    """L(-2, chi_D) = -B_{3,chi_D} / 3 for a negative fundamental discriminant D."""
    f = -D
    b = Fraction(f) ** 2 * sum(kronecker(D, a) * bernoulli3(Fraction(a, f)) for a in range(1, f + 1))
    return -b / 3


def fundamental_split(N):
    """-N = D f^2 with D a fundamental discriminant (N = 0, 3 mod 4)."""
    core, f = 1, 1
    for p, e in factorize(N).items():
        core *= p ** (e % 2)
        f *= p ** (e // 2)
    D = -core
    if D % 4 != 1:
        D *= 4
        f //= 2
    return D, f


@lru_cache(maxsize=None)
def cohen_h3(N):
    if N == 0:
        return Fraction(-1, 252)
    if N % 4 not in (0, 3):
        return Fraction(0)
    D, f = fundamental_split(N)
    s = sum(mobius(d) * kronecker(D, d) * d * d * sigma(f // d, 5) for d in divisors(f))
    return l_value(D) * s


def coefficient(n, r, m):
    if n == 0 and r == 0 and m == 0:
        return Fraction(1)
    g = math.gcd(math.gcd(n, r), m)
    total = Fraction(0)
    for d in divisors(g):
        total += d**3 * cohen_h3((4 * n * m - r * r) // (d * d))
    return -60480 * total


def reduced_forms(det_bound):
    out = []
    a = 1
    while 3 * a * a <= 4 * det_bound:
        for b in range(0, a // 2 + 1):
            c = a
            while a * c - b * b <= det_bound:
                out.append((a, b, c))
                c += 1
        a += 1
    out.sort(key=lambda t: (t[0] * t[2] - t[1] ** 2, t))
    return out


def main(argv):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--det-bound", type=int, default=3000)
    ap.add_argument("--rank1-bound", type=int, default=4000)
    ap.add_argument("-o", "--output", default="-")
    args = ap.parse_args(argv)

    assert coefficient(1, 0, 0) == 240
    assert coefficient(1, 0, 1) == 30240
    assert coefficient(1, 1, 1) == 13440

    lines = [
        "!weight 4 level 1 group GL2",
        "# Level-1 Siegel Eisenstein series of degree 2 and weight 4, normalized a(0) = 1.",
        "# Source: Maass lift of the Jacobi Eisenstein series E_{4,1} (Eichler-Zagier),",
        "# a(n,r,m) = -60480 sum_{d | (n,r,m)} d^3 H(3,(4nm-r^2)/d^2) with Cohen's H(3,N),",
        "# H(3,0) = -1/252, H(3,N) = L(-2,chi_D) sum_{d|f} mu(d) chi_D(d) d^2 sigma_5(f/d) for -N = D f^2.",
        "# Entry 'a b c v' is the Gram matrix [[a,b],[b,c]], i.e. n = a, r = 2b, m = c.",
        f"# Generated by tools/gen_level1_eisenstein.py --det-bound {args.det_bound} --rank1-bound {args.rank1_bound}",
        "0 0 0 1/1",
    ]
    for m in range(1, args.rank1_bound + 1):
        lines.append(f"{m} 0 0 {coefficient(m, 0, 0).numerator}/1")
    for a, b, c in reduced_forms(args.det_bound):
        v = coefficient(a, 2 * b, c)
        lines.append(f"{a} {b} {c} {v.numerator}/{v.denominator}")
    text = "\n".join(lines) + "\n"
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text)


if __name__ == "__main__":
    main(sys.argv[1:])
