"""Invariants of the Lefschetz filling of an open book, and the d3 invariant.

The filling X of ``(page, word)`` is the page times a disk with one
2-handle per twist. Its second homology is the kernel of
``Z^k -> H_1(page)``, e_i -> [c_i]. When the twist curves are pairwise
disjoint the intersection form on that kernel is ``diag(-sign_i)``
restricted; otherwise no form is produced.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import IntMatrix, kernel_basis
from .openbook import OpenBook
from .surface import curve_class, euler_characteristic, geometrically_disjoint

# d3 of the standard overtwisted sphere in the additive normalization.
# Not derived here; every output that uses it says so.
D_STOT = Fraction(1)


@dataclass(frozen=True)
class FillingInvariants:
    chi: int
    sigma: int | None = None
    c1_squared: int | None = None
    h2_rank: int | None = None

    def __post_init__(self):
        if self.sigma is not None and self.h2_rank is not None and abs(self.sigma) > self.h2_rank:
            raise ValueError("|sigma| cannot exceed the rank of H2")


def filling_euler(ob: OpenBook) -> int:
    return euler_characteristic(ob.page) + len(ob.monodromy)


def _class_matrix(ob: OpenBook) -> IntMatrix:
    """Columns are the homology classes of the twist curves."""
    page = ob.page
    cols = [curve_class(page, t.curve) for t in ob.monodromy]
    rows = page.rank
    return IntMatrix(rows, len(cols), (cols[j][i] for i in range(rows) for j in range(len(cols))))


def filling_h2_basis(ob: OpenBook) -> IntMatrix:
    return kernel_basis(_class_matrix(ob))


def words_disjoint(ob: OpenBook) -> bool:
    curves = ob.monodromy.curves()
    return all(
        geometrically_disjoint(c1, c2) for i, c1 in enumerate(curves) for c2 in curves[i + 1:]
    )


def filling_intersection_form(ob: OpenBook) -> IntMatrix | None:
    K = filling_h2_basis(ob)
    if K.cols and not words_disjoint(ob):
        return None
    Q = IntMatrix.diag([-t.sign for t in ob.monodromy])
    return K.T @ Q @ K


def filling_signature(form: IntMatrix) -> int:
    """Signature by exact symmetric elimination over the rationals."""
    if not form.is_symmetric():
        raise ValueError("signature needs a symmetric matrix")
    n = form.rows
    m = [[Fraction(x) for x in row] for row in form.tolist()]
    pos = neg = 0
    k = 0
    while k < n:
        if m[k][k] == 0:
            j = next((j for j in range(k + 1, n) if m[j][j] != 0), None)
            if j is not None:
                m[k], m[j] = m[j], m[k]
                for row in m:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if m[k][j] != 0), None)
                if j is None:
                    # row k is zero: a null direction
                    k += 1
                    continue
                # e_k + e_j has square 2 m[k][j] != 0
                for c in range(n):
                    m[k][c] += m[j][c]
                for r in range(n):
                    m[r][k] += m[r][j]
        p = m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / p
            if f:
                for c in range(n):
                    m[i][c] -= f * m[k][c]
                for r in range(n):
                    m[r][i] -= f * m[r][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        k += 1
    return pos - neg


def d3_evaluate(c1sq: int, sigma: int, chi: int) -> Fraction:
    """d3 = (c1^2 - 3 sigma - 2 (chi - 1)) / 4, normalized to be additive."""
    return Fraction(c1sq - 3 * sigma - 2 * (chi - 1), 4)


def d3_from_word(ob: OpenBook) -> Fraction | None:
    """d3 of the supported structure when the filling is Stein with H2 = 0.

    Needs every twist positive and the twist classes linearly independent;
    then c1^2 = sigma = 0 and only the Euler characteristic contributes.
    """
    if any(t.sign < 0 for t in ob.monodromy):
        return None
    if filling_h2_basis(ob).cols:
        return None
    return d3_evaluate(0, 0, filling_euler(ob))


def d3_connected_sum(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(a) + Fraction(b)


def d3_stot_sum(d3: Fraction, d_stot: Fraction = D_STOT) -> Fraction:
    """d3 after summing with the standard overtwisted sphere."""
    return d3_connected_sum(d3, d_stot)


def filling_invariants(ob: OpenBook) -> FillingInvariants:
    chi = filling_euler(ob)
    h2 = filling_h2_basis(ob).cols
    form = filling_intersection_form(ob)
    sigma = filling_signature(form) if form is not None else None
    c1sq = 0 if h2 == 0 else None
    return FillingInvariants(chi, sigma, c1sq, h2)
