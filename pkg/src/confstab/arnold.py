"""The cohomology ring of ordered configuration spaces of R^m.

H^*(PConf_n(R^m)) is presented by generators w_ab (1 <= a != b <= n) of
degree m-1 subject to

    w_ba = (-1)^m w_ab,
    w_ab^2 = 0,
    graded commutativity (degree m-1 generators), and
    the three-term Arnold relation
        w_ab w_bc + w_bc w_ca + w_ca w_ab = 0.

Conventions frozen here (golden-tested; all downstream stability checks
are rank/isomorphism level and insensitive to a global sign change):

* generators are stored with a < b; w_ba rewrites with the sign (-1)^m;
* a monomial is a tuple of pairs sorted lexicographically by (b, a);
  swapping adjacent factors costs (-1)^(m-1);
* admissible monomials are those with pairwise distinct larger indices b;
  they form a basis, and the non-admissible product rewrites (for
  x < y < z, independently of m) as

      w_xz w_yz = w_xy w_yz - w_xy w_xz,

  which strictly decreases the multiset of larger indices, so
  straightening terminates.

The count of admissible monomials in degree i(m-1) is the elementary
symmetric polynomial e_i(1, ..., n-1), i.e. the t^{i(m-1)} coefficient
of prod_{j=1}^{n-1} (1 + j t^{m-1}).

Homology H_r(PConf_n(R^m)) is the dual free module; the symmetric group
acts by the contragredient (inverse-transpose) matrices, and injections
phi: {1..n} -> {1..N} act covariantly by the transpose of the
restriction ring map (generators outside the image of phi die).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .rings import Ring, ZZ
from .sparse import SparseMatrix
from .symgroup import PermGroup

Pair = tuple[int, int]
Monomial = tuple[Pair, ...]


def canonical_generator(a: int, b: int, m: int) -> tuple[Pair, int]:
    """Store w_ab with a < b; flipping costs (-1)^m."""
    if a == b:
        raise ValueError("generator needs distinct labels")
    if a < b:
        return (a, b), 1
    return (b, a), (-1) ** m


def monomial_from_factors(factors, m: int) -> tuple[Monomial | None, int]:
    """Sort a word of generators into canonical order.

    Returns (monomial, sign); monomial is None when a pair repeats
    (squares vanish).  Adjacent swaps cost (-1)^(m-1).
    """
    sign = 1
    canon: list[Pair] = []
    for (a, b) in factors:
        pair, s = canonical_generator(a, b, m)
        sign *= s
        canon.append(pair)
    swap_sign = (-1) ** (m - 1)
    # insertion sort by (b, a), tracking crossings
    for i in range(1, len(canon)):
        j = i
        while j > 0 and (canon[j - 1][1], canon[j - 1][0]) > (canon[j][1], canon[j][0]):
            canon[j - 1], canon[j] = canon[j], canon[j - 1]
            sign *= swap_sign
            j -= 1
    mono = tuple(canon)
    for t in range(1, len(mono)):
        if mono[t] == mono[t - 1]:
            return None, 0
    return mono, sign


def is_admissible(mono: Monomial) -> bool:
    bs = [b for (_, b) in mono]
    return len(bs) == len(set(bs))


@lru_cache(maxsize=None)
def _straighten(mono: Monomial, parity: int) -> tuple[tuple[Monomial, int], ...]:
    """Expand a canonical monomial over the admissible basis.

    parity = m % 2 is all the sign data the rewrite needs.
    """
    m = 2 if parity == 0 else 3
    for t in range(1, len(mono)):
        (x, z1), (y, z2) = mono[t - 1], mono[t]
        if z1 != z2:
            continue
        # repeated larger index: x < y < z since pairs are distinct and sorted
        z = z1
        rest = mono[:t - 1] + mono[t + 1:]
        out: dict[Monomial, int] = {}
        for repl, s0 in ((((x, y), (y, z)), 1), (((x, y), (x, z)), -1)):
            nm, s1 = monomial_from_factors(rest[:t - 1] + repl + rest[t - 1:], m)
            if nm is None:
                continue
            for sub, s2 in _straighten(nm, parity):
                c = out.get(sub, 0) + s0 * s1 * s2
                if c:
                    out[sub] = c
                else:
                    out.pop(sub, None)
        return tuple(sorted(out.items()))
    return ((mono, 1),)


def straighten_word(factors, m: int) -> dict[Monomial, int]:
    """Canonicalize and fully straighten a word of generator pairs."""
    mono, sign = monomial_from_factors(factors, m)
    if mono is None:
        return {}
    return {sub: sign * c for sub, c in _straighten(mono, m % 2)}


@lru_cache(maxsize=None)
def admissible_basis(n: int, m: int, r: int) -> tuple[Monomial, ...]:
    """The admissible monomial basis of H^r(PConf_n(R^m)).

    Empty unless (m-1) | r; for r = i(m-1) the basis consists of the
    monomials w_{a_1 b_1} ... w_{a_i b_i} with a_j < b_j and the b_j
    pairwise distinct.
    """
    if n < 0 or m < 2 or r < 0:
        raise ValueError("need n >= 0, m >= 2, r >= 0")
    if r == 0:
        return ((),)
    if r % (m - 1) != 0:
        return ()
    i = r // (m - 1)
    out: list[Monomial] = []
    for bs in combinations(range(2, n + 1), i):
        for als in product(*(range(1, b) for b in bs)):
            out.append(tuple(zip(als, bs)))
    return tuple(out)


def poincare_coefficients(n: int) -> list[int]:
    """[e_0, e_1, ..., e_{n-1}](1, ..., n-1): the coefficients of
    prod_{j=1}^{n-1}(1 + j t) -- rank of H_{i(m-1)} for each i."""
    coeffs = [1]
    for j in range(1, n):
        nxt = coeffs + [0]
        for k in range(len(coeffs)):
            nxt[k + 1] += coeffs[k] * j
        coeffs = nxt
    return coeffs


def basis_count(n: int, i: int) -> int:
    """Number of admissible monomials with i factors: e_i(1, ..., n-1)."""
    coeffs = poincare_coefficients(n)
    return coeffs[i] if 0 <= i < len(coeffs) else 0


@dataclass(frozen=True)
class ArnoldElement:
    """Homogeneous integer combination of monomials in an ambient (n, m)."""

    n: int
    m: int
    terms: tuple[tuple[Monomial, int], ...]

    @classmethod
    def from_terms(cls, n: int, m: int, terms: dict[Monomial, int]) -> "ArnoldElement":
        degs = {len(mono) for mono, c in terms.items() if c}
        if len(degs) > 1:
            raise ValueError("mixed-degree element rejected")
        for mono, _ in terms.items():
            for (a, b) in mono:
                if not (1 <= a < b <= n):
                    raise ValueError(f"generator ({a},{b}) out of range for n={n}")
        return cls(n, m, tuple(sorted((mo, c) for mo, c in terms.items() if c)))

    @classmethod
    def from_word(cls, n: int, m: int, factors, coeff: int = 1) -> "ArnoldElement":
        """Element given by one product of generators w_{a1 b1} ... (labels
        in any order; canonicalized but NOT straightened)."""
        mono, sign = monomial_from_factors(factors, m)
        if mono is None or coeff == 0:
            return cls(n, m, ())
        return cls.from_terms(n, m, {mono: sign * coeff})

    @classmethod
    def one(cls, n: int, m: int) -> "ArnoldElement":
        return cls.from_terms(n, m, {(): 1})

    @classmethod
    def zero(cls, n: int, m: int) -> "ArnoldElement":
        return cls(n, m, ())

    def degree(self) -> int | None:
        if not self.terms:
            return None
        return len(self.terms[0][0]) * (self.m - 1)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "ArnoldElement") -> "ArnoldElement":
        self._check_ambient(other)
        out = dict(self.terms)
        for mono, c in other.terms:
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return ArnoldElement.from_terms(self.n, self.m, out)

    def scale(self, a: int) -> "ArnoldElement":
        return ArnoldElement.from_terms(self.n, self.m,
                                        {mo: a * c for mo, c in self.terms})

    def __sub__(self, other: "ArnoldElement") -> "ArnoldElement":
        return self + other.scale(-1)

    def _check_ambient(self, other: "ArnoldElement") -> None:
        if (self.n, self.m) != (other.n, other.m):
            raise ValueError("ambient (n, m) mismatch")


def normal_form(x: ArnoldElement) -> ArnoldElement:
    """Straighten onto the admissible basis; idempotent."""
    out: dict[Monomial, int] = {}
    for mono, c in x.terms:
        for sub, s in _straighten(mono, x.m % 2):
            v = out.get(sub, 0) + c * s
            if v:
                out[sub] = v
            else:
                out.pop(sub, None)
    return ArnoldElement.from_terms(x.n, x.m, out)


def multiply(x: ArnoldElement, y: ArnoldElement) -> ArnoldElement:
    """Product in the presented ring, output in normal form."""
    x._check_ambient(y)
    out: dict[Monomial, int] = {}
    for mx, cx in x.terms:
        for my, cy in y.terms:
            for sub, s in straighten_word(mx + my, x.m).items():
                v = out.get(sub, 0) + cx * cy * s
                if v:
                    out[sub] = v
                else:
                    out.pop(sub, None)
    return ArnoldElement.from_terms(x.n, x.m, out)


def sigma_action(sigma: tuple[int, ...], x: ArnoldElement) -> ArnoldElement:
    """Relabel by a permutation of {0..n-1} (0-based tuple of images)
    acting on 1-based labels; a ring automorphism, output normalized."""
    if len(sigma) != x.n or sorted(sigma) != list(range(x.n)):
        raise ValueError("not a permutation of the ambient labels")
    out: dict[Monomial, int] = {}
    for mono, c in x.terms:
        relabeled = [(sigma[a - 1] + 1, sigma[b - 1] + 1) for (a, b) in mono]
        for sub, s in straighten_word(relabeled, x.m).items():
            v = out.get(sub, 0) + c * s
            if v:
                out[sub] = v
            else:
                out.pop(sub, None)
    return ArnoldElement.from_terms(x.n, x.m, out)


# --------------------------------------------------------------------------
# the homology module and its symmetric-group / injection functoriality


@dataclass(frozen=True)
class SigmaModule:
    """H_r(PConf_n(R^m); ring) as a free module with S_n-action.

    gen_matrices[i] is the action of the adjacent transposition
    s_i = (i, i+1) on homology: the inverse-transpose (here: transpose,
    the generators being involutions) of the cohomology relabeling
    matrix in the admissible basis.
    """

    n: int
    m: int
    r: int
    ring: Ring
    basis: tuple[Monomial, ...]
    gen_matrices: tuple[SparseMatrix, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def action(self, sigma: tuple[int, ...]) -> SparseMatrix:
        """Homology action of an arbitrary permutation."""
        group = PermGroup(self.n)
        out = SparseMatrix.identity(self.rank, self.ring)
        for i in group.word_in_coxeter_gens(sigma):
            out = self.gen_matrices[i] @ out
        return out

    def trivial(self) -> bool:
        return self.rank == 0


def _cohomology_gen_matrix(n: int, m: int, r: int, i: int, ring: Ring) -> SparseMatrix:
    """Matrix of the cohomology action of s_i = (i, i+1) in the admissible
    basis (columns = images of basis monomials)."""
    basis = admissible_basis(n, m, r)
    index = {mono: t for t, mono in enumerate(basis)}
    sigma = list(range(n))
    sigma[i], sigma[i + 1] = sigma[i + 1], sigma[i]
    entries = {}
    for col, mono in enumerate(basis):
        relabeled = [(sigma[a - 1] + 1, sigma[b - 1] + 1) for (a, b) in mono]
        for sub, s in straighten_word(relabeled, m).items():
            entries[(index[sub], col)] = s
    return SparseMatrix(len(basis), len(basis), entries, ring, normalize=True)


@lru_cache(maxsize=None)
def homology_module(n: int, m: int, r: int, ring: Ring = ZZ) -> SigmaModule:
    """H_r(PConf_n(R^m); ring), with the contragredient S_n-action."""
    basis = admissible_basis(n, m, r)
    gens = []
    for i in range(n - 1):
        a = _cohomology_gen_matrix(n, m, r, i, ring)
        gens.append(a.transpose())
    return SigmaModule(n, m, r, ring, basis, tuple(gens))


def fi_map(phi, N: int, m: int, r: int, ring: Ring = ZZ) -> SparseMatrix:
    """Covariant map H_r(PConf_n) -> H_r(PConf_N) induced by an injection
    phi: {1..n} -> {1..N} (phi given 1-based as a sequence of images).

    On cohomology the injection restricts: generators with a label
    outside the image die, the rest relabel through phi^{-1}; the
    homology map is the transpose.  For the standard inclusion this is
    the basis inclusion (the classical stabilization map on coefficients).
    """
    phi = tuple(phi)
    n = len(phi)
    if len(set(phi)) != n or any(not (1 <= v <= N) for v in phi):
        raise ValueError("phi must be injective into {1..N}")
    src = admissible_basis(n, m, r)
    tgt = admissible_basis(N, m, r)
    src_index = {mono: t for t, mono in enumerate(src)}
    preimage = {v: a + 1 for a, v in enumerate(phi)}
    entries = {}
    for col_t, mono in enumerate(tgt):
        if any(a not in preimage or b not in preimage for (a, b) in mono):
            continue
        pulled = [(preimage[a], preimage[b]) for (a, b) in mono]
        for sub, s in straighten_word(pulled, m).items():
            # transpose: restriction entry [sub, mono] lands at [mono, sub]
            entries[(col_t, src_index[sub])] = s
    return SparseMatrix(len(tgt), len(src), entries, ring, normalize=True)


def standard_inclusion_map(n: int, m: int, r: int, ring: Ring = ZZ) -> SparseMatrix:
    return fi_map(tuple(range(1, n + 1)), n + 1, m, r, ring)
