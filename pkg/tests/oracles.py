"""Independent oracles for the test suite.

Everything here recomputes expected values by a route different from the
code under test: invariant factors from determinantal divisors, the
presented-ring quotient by explicit relation spans (no straightening),
cyclic-group homology from the 2-periodic resolution, abelianizations
from the Coxeter presentation.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd

from confstab.echelon import IntEchelon
from confstab.arnold import monomial_from_factors
from confstab.snf import invariant_factors_of_columns
from confstab.sparse import SparseMatrix


def determinantal_divisors(M: SparseMatrix) -> list[int]:
    """Invariant factors via gcds of k x k minors: d_k = D_k / D_{k-1}.

    Exponential in the size; for small matrices only.  Completely
    independent of any elimination order.
    """
    rows = M.rows()
    m, n = M.nrows, M.ncols

    def minor(rs, cs) -> int:
        k = len(rs)
        if k == 0:
            return 1
        if k == 1:
            return rows[rs[0]][cs[0]]
        total = 0
        sign = 1
        for t in range(k):
            sub = minor(rs[1:], cs[:t] + cs[t + 1:])
            total += sign * rows[rs[0]][cs[t]] * sub
            sign = -sign
        return total

    out = []
    prev = 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for rs in combinations(range(m), k):
            for cs in combinations(range(n), k):
                g = gcd(g, minor(list(rs), list(cs)))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def det_fraction(rows: list[list[int]]) -> Fraction:
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if a[r][i] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            a[i], a[piv] = a[piv], a[i]
            det = -det
        det *= a[i][i]
        inv = 1 / a[i][i]
        for r in range(i + 1, n):
            f = a[r][i] * inv
            if f:
                for c in range(i, n):
                    a[r][c] -= f * a[i][c]
    return det


# --------------------------------------------------------------------------
# brute-force presented-ring quotient (no straightening involved)


def squarefree_monomials(n: int, i: int) -> list[tuple]:
    """All products of i distinct canonical generators, in the canonical
    (b, a)-lexicographic factor order."""
    pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    return [tuple(sorted(sub, key=lambda p: (p[1], p[0])))
            for sub in combinations(pairs, i)]


def relation_span_columns(n: int, m: int, i: int):
    """The degree-i(m-1) piece of the relation ideal, spanned by all
    three-term relations times all monomial multipliers, expressed over
    the squarefree monomial basis by pure sign canonicalization."""
    monos = squarefree_monomials(n, i)
    index = {mo: t for t, mo in enumerate(monos)}
    pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    cols = []
    if i < 2:
        return monos, cols
    for (x, y, z) in combinations(range(1, n + 1), 3):
        # w_xy w_yz + w_yz w_zx + w_zx w_xy = 0
        words = [((x, y), (y, z)), ((y, z), (z, x)), ((z, x), (x, y))]
        for mult in combinations(pairs, i - 2):
            col: dict[int, int] = {}
            for word in words:
                mono, sign = monomial_from_factors(list(word) + list(mult), m)
                if mono is None:
                    continue
                t = index[mono]
                v = col.get(t, 0) + sign
                if v:
                    col[t] = v
                else:
                    col.pop(t, None)
            if col:
                cols.append(col)
    return monos, cols


def presented_ring_rank(n: int, m: int, i: int) -> int:
    """Rank of (squarefree monomials) / (relation span) over Q."""
    monos, cols = relation_span_columns(n, m, i)
    ech = IntEchelon(len(monos))
    for col in cols:
        ech.add_column(col)
    return len(monos) - ech.rank


def presented_ring_torsion_free(n: int, m: int, i: int) -> bool:
    """The integral quotient by the relation span is torsion-free."""
    monos, cols = relation_span_columns(n, m, i)
    factors = invariant_factors_of_columns(cols, len(monos))
    return all(d == 1 for d in factors)


def element_class_in_quotient(n: int, m: int, i: int, terms: dict, other: dict) -> bool:
    """Do two degree-i elements agree in the presented ring?  Checked by
    relation-span membership of their difference (no straightening)."""
    monos, cols = relation_span_columns(n, m, i)
    index = {mo: t for t, mo in enumerate(monos)}
    ech = IntEchelon(len(monos))
    for col in cols:
        ech.add_column(col)
    diff: dict[int, int] = {}
    for mono, c in terms.items():
        diff[index[mono]] = diff.get(index[mono], 0) + c
    for mono, c in other.items():
        diff[index[mono]] = diff.get(index[mono], 0) - c
    diff = {t: c for t, c in diff.items() if c}
    return ech.contains(diff)


# --------------------------------------------------------------------------
# small group homology oracles


def cyclic_homology(k: int, q: int) -> tuple[int, tuple[int, ...]]:
    """H_q(C_k; Z) from the 2-periodic resolution: Z, then Z/k in odd
    degrees and 0 in positive even degrees."""
    if q == 0:
        return (1, ())
    if q % 2 == 1:
        return (0, (k,)) if k > 1 else (0, ())
    return (0, ())


def symmetric_abelianization(n: int) -> tuple[int, tuple[int, ...]]:
    """S_n^ab from the Coxeter presentation: relations 2 s_i = 0 and
    s_i = s_{i+1} (abelianized braid), s_i = s_j (implied)."""
    gens = n - 1
    if gens <= 0:
        return (0, ())
    cols = []
    for i in range(gens):
        cols.append({i: 2})
    for i in range(gens - 1):
        cols.append({i: 1, i + 1: -1})
    factors = invariant_factors_of_columns(cols, gens)
    free = gens - len(factors)
    torsion = tuple(d for d in factors if d > 1)
    return (free, torsion)
