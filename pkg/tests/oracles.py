"""Reference computations that share no code with the package.

Run ``python tests/oracles.py`` to regenerate ``tests/data/oracle_values.json``.
The tests compare both the package and these oracles against the frozen file.
"""

from __future__ import annotations

import itertools
import json
import math
from fractions import Fraction
from functools import reduce
from pathlib import Path

import numpy as np

FROZEN = Path(__file__).parent / "data" / "oracle_values.json"


# integer matrices as lists of lists


def det(m: list[list[int]]) -> int:
    """Exact determinant by Gaussian elimination over Fractions."""
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    sign = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    out = Fraction(sign)
    for k in range(n):
        out *= a[k][k]
    return int(out)


def determinantal_divisors(m: list[list[int]]) -> list[int]:
    """gcd of all k x k minors, k = 1 .. min(rows, cols); zeros once the rank is passed."""
    rows, cols = len(m), len(m[0]) if m else 0
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in itertools.combinations(range(rows), k):
            for ci in itertools.combinations(range(cols), k):
                g = math.gcd(g, det([[m[i][j] for j in ci] for i in ri]))
        out.append(g)
    return out


def invariant_factors(m: list[list[int]]) -> list[int]:
    dd = determinantal_divisors(m)
    out, prev = [], 1
    for d in dd:
        if d == 0:
            out.append(0)
        else:
            out.append(d // prev)
            prev = d
    return out


def cokernel(m: list[list[int]], rows: int) -> tuple[list[int], int]:
    """(torsion > 1, free rank) of Z^rows / column span of m."""
    if not m or not m[0]:
        return [], rows
    inv = invariant_factors(m)
    rank = sum(1 for d in inv if d != 0)
    return [d for d in inv if d > 1], rows - rank


# lens spaces from their genus-one Heegaard splitting


def lens_first_homology(p: int) -> tuple[list[int], int]:
    """H1 of L(p, q) from the cellular chain complex Z -0-> Z -p-> Z -0-> Z."""
    d2 = [[p]]
    return cokernel(d2, 1) if p != 0 else ([], 1)


# open books on plain pages via explicit arcs


def plain_class(g: int, n: int, kind: str, idx: int) -> list[int]:
    r = 2 * g + n - 1
    v = [0] * r
    if kind == "a":
        v[2 * idx - 2] = 1
    elif kind == "b":
        v[2 * idx - 1] = 1
    elif idx < n:
        v[2 * g + idx - 1] = 1
    else:
        for j in range(n - 1):
            v[2 * g + j] = -1
    return v


def _omega(g: int, x: list[int], y: list[int]) -> int:
    return sum(x[2 * i] * y[2 * i + 1] - x[2 * i + 1] * y[2 * i] for i in range(g))


def open_book_h1(g: int, n: int, word: list[tuple[str, int, int]]) -> tuple[list[int], int]:
    """H1 of the open book on Sigma_{g,n} with a word of (kind, index, sign), leftmost first.

    A relative class is (arc coefficients, cycle); arc j runs from boundary n
    to boundary j and meets the class e_j once. H1(M) is H1(Sigma) modulo
    phi(z) - z for cycles and phi(arc) - arc for arcs.
    """
    r = 2 * g + n - 1
    curves = [(plain_class(g, n, k, i), s) for k, i, s in word]

    def push(arcs: list[int], z: list[int]) -> list[int]:
        z = list(z)
        for c, s in curves:
            meet = sum(arcs[j] * c[2 * g + j] for j in range(n - 1)) + _omega(g, z, c)
            z = [zi + s * meet * ci for zi, ci in zip(z, c)]
        return z

    rel = []
    for i in range(r):
        e = [int(i == k) for k in range(r)]
        rel.append([a - b for a, b in zip(push([0] * (n - 1), e), e)])
    for j in range(n - 1):
        arcs = [int(j == k) for k in range(n - 1)]
        rel.append(push(arcs, [0] * r))
    cols = [list(col) for col in zip(*rel)] if r else []
    return cokernel(cols, r) if r else ([], 0)


# signature by floating eigenvalues


def float_signature(m: list[list[int]]) -> int:
    if not m:
        return 0
    ev = np.linalg.eigvalsh(np.array(m, dtype=float))
    return int(np.sum(ev > 1e-9) - np.sum(ev < -1e-9))


def lens_plumbing_signature(n: int) -> int:
    """Form on the kernel of Z^n -> Z, all ones, in the basis e_i - e_{i+1}: tridiagonal (-2, 1)."""
    k = n - 1
    m = [[-2 if i == j else (1 if abs(i - j) == 1 else 0) for j in range(k)] for i in range(k)]
    return float_signature(m)


# density threshold by dense sampling


def literal_negative_k0(points: int = 1 << 20) -> float:
    th = np.arange(points) / points
    A = 1 + 0.5 * np.cos(2 * np.pi * th)
    B = np.sin(2 * np.pi * th) - 0.5
    return float(np.max(-B / A))


def cos2_negative_k0(points: int = 1 << 20) -> float:
    th = np.arange(points) / points
    A = 1 + 0.5 * np.cos(2 * np.pi * th) ** 2
    B = np.sin(2 * np.pi * th) - 0.5
    return float(np.max(-B / A))


def compute_all() -> dict:
    return {
        "snf_examples": {
            "[[2,4],[6,8]]": invariant_factors([[2, 4], [6, 8]]),
            "identity3": invariant_factors([[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
            "[[0]]": invariant_factors([[0]]),
            "diag(2,3)": invariant_factors([[2, 0], [0, 3]]),
        },
        "lens_h1": {str(p): list(lens_first_homology(p)) for p in range(7)},
        "lens_h1_from_arcs": {str(p): list(open_book_h1(0, 2, [("d", 1, 1)] * p)) for p in range(7)},
        "trefoil_h1": list(open_book_h1(1, 1, [("a", 1, 1), ("b", 1, 1)])),
        "lens_signature": {str(p): lens_plumbing_signature(p) for p in range(1, 7)},
        "k0_literal_negative": round(literal_negative_k0(), 6),
        "k0_cos2_negative": round(cos2_negative_k0(), 9),
    }


def load_frozen() -> dict:
    return json.loads(FROZEN.read_text())


if __name__ == "__main__":
    FROZEN.parent.mkdir(exist_ok=True)
    FROZEN.write_text(json.dumps(compute_all(), indent=2, sort_keys=True) + "\n")
    print(FROZEN.read_text())
