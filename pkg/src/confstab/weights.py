"""Bigraded weight polynomials for mixed Tate classes.

A monomial t^a u^b stands for a Tate summand Lambda(b)[a] (a = homological
degree, b = weight twist); tensoring summands adds both exponents.  The
configuration space of n points in affine d-space is handled by the
diagonal-stripping recursion: removing one diagonal constraint splits off
the closed stratum with a (d, 2d-1) twist-shift,

    W(PConf_{n,P}) = W(PConf_{n,P minus {ij}})
                     + t^(2d-1) u^d W(PConf_{n-1, P contracted along ij}),

with W(affine space) = 1.  All summands here are split, so coefficients
stay nonnegative; the constructors assert it.

alpha-purity (alpha = p/q in lowest terms): every monomial t^a u^b must
have q | b and a = p b / q.  Projective n-space is 2-pure, punctured
affine d-space is (2d-1)/d-pure, and the configuration polynomials are
(2d-1)/d-pure with the coefficient at (k(2d-1), kd) equal to the Betti
number of PConf_n(C^d) in degree k(2d-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


class WeightPolynomial:
    """Finitely supported nonnegative-integer coefficients on (degree,
    weight) pairs."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[tuple[int, int], int] | None = None,
                 allow_negative: bool = False):
        data = {}
        for key, c in (coeffs or {}).items():
            if c == 0:
                continue
            if c < 0 and not allow_negative:
                raise ValueError(f"negative coefficient at {key}")
            data[key] = c
        self.coeffs = data

    @classmethod
    def zero(cls) -> "WeightPolynomial":
        return cls({})

    @classmethod
    def one(cls) -> "WeightPolynomial":
        return cls({(0, 0): 1})

    def __add__(self, other: "WeightPolynomial") -> "WeightPolynomial":
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, 0) + c
        return WeightPolynomial(out)

    def __mul__(self, other: "WeightPolynomial") -> "WeightPolynomial":
        out: dict[tuple[int, int], int] = {}
        for (a1, b1), c1 in self.coeffs.items():
            for (a2, b2), c2 in other.coeffs.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return WeightPolynomial(out)

    def scale(self, c: int) -> "WeightPolynomial":
        return WeightPolynomial({k: c * v for k, v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, WeightPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def coefficient(self, degree: int, weight: int) -> int:
        return self.coeffs.get((degree, weight), 0)

    def support(self) -> list[tuple[int, int]]:
        return sorted(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def total(self) -> int:
        return sum(self.coeffs.values())

    def serialize(self) -> list[list[int]]:
        """Stable list-of-[degree, weight, coefficient] form."""
        return [[a, b, self.coeffs[(a, b)]] for (a, b) in self.support()]

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for (a, b) in self.support():
            c = self.coeffs[(a, b)]
            body = f"t^{a}u^{b}" if (a or b) else "1"
            terms.append(body if c == 1 and (a or b) else f"{c}*{body}" if (a or b) else str(c))
        return " + ".join(terms)


def tate_summand(q_twist: int, p_shift: int) -> WeightPolynomial:
    """The class of Lambda(q_twist)[p_shift]: the monomial t^p u^q."""
    return WeightPolynomial({(p_shift, q_twist): 1})


def twist_shift(P: WeightPolynomial, a_twist: int, b_shift: int) -> WeightPolynomial:
    """Tensor by Lambda(a_twist)[b_shift]: shift all exponents."""
    return WeightPolynomial({(a + b_shift, b + a_twist): c
                             for (a, b), c in P.coeffs.items()})


@dataclass(frozen=True)
class PurityParams:
    """alpha = p/q with p, q coprime positive integers."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ValueError("purity slope needs positive numerator and denominator")
        if gcd(self.p, self.q) != 1:
            raise ValueError("purity slope must be in lowest terms")

    @classmethod
    def from_fraction(cls, num: int, den: int) -> "PurityParams":
        g = gcd(num, den)
        return cls(num // g, den // g)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class PurityResult:
    passed: bool
    witness: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.passed


def alpha_purity_check(P: WeightPolynomial, alpha: PurityParams) -> PurityResult:
    """Pass iff every monomial t^a u^b has q | b and a = p * (b / q);
    on failure the witness is the offending (degree, weight)."""
    for (a, b) in P.support():
        if b % alpha.q != 0 or a != alpha.p * (b // alpha.q):
            return PurityResult(False, (a, b))
    return PurityResult(True, None)


def weight_pieces(P: WeightPolynomial) -> list[tuple[int, dict[int, int]]]:
    """Partition the support by weight; summing the pieces recovers P."""
    pieces: dict[int, dict[int, int]] = {}
    for (a, b), c in P.coeffs.items():
        pieces.setdefault(b, {})[a] = c
    return [(b, dict(sorted(pieces[b].items()))) for b in sorted(pieces)]


# --------------------------------------------------------------------------
# the diagonal recursion


def _contract(pairs: frozenset[tuple[int, int]], i: int, j: int,
              n: int) -> frozenset[tuple[int, int]]:
    """Relabel the other diagonals after gluing point j onto point i
    (0-based labels; j removed, labels above j shift down)."""
    def relabel(k: int) -> int:
        if k == j:
            k = i
        return k - 1 if k > j else k

    out = set()
    for (a, b) in pairs:
        ra, rb = relabel(a), relabel(b)
        if ra == rb:
            raise AssertionError("only the contracted diagonal may collapse")
        out.add((min(ra, rb), max(ra, rb)))
    return frozenset(out)


def _pconf_relative(n: int, pairs: frozenset[tuple[int, int]], d: int,
                    memo: dict, choose) -> WeightPolynomial:
    if not pairs or n <= 1:
        return WeightPolynomial.one()
    key = (n, pairs)
    hit = memo.get(key)
    if hit is not None:
        return hit
    (i, j) = choose(pairs)
    rest = pairs - {(i, j)}
    open_part = _pconf_relative(n, rest, d, memo, choose)
    closed = _pconf_relative(n - 1, _contract(rest, i, j, n), d, memo, choose)
    out = open_part + twist_shift(closed, d, 2 * d - 1)
    memo[key] = out
    return out


def pconf_weight_poly(n: int, d: int, choose=None) -> WeightPolynomial:
    """Weight polynomial of PConf_n(A^d) by stripping diagonals.

    choose picks which diagonal to strip next (defaults to the largest
    pair); the result is independent of the choice, which is exercised
    by tests that permute the removal order.
    """
    if n < 0 or d < 1:
        raise ValueError("need n >= 0 and d >= 1")
    if choose is None:
        choose = max
    pairs = frozenset((i, j) for i in range(n) for j in range(i + 1, n))
    return _pconf_relative(n, pairs, d, {}, choose)


def pconf_purity_params(d: int) -> PurityParams:
    return PurityParams.from_fraction(2 * d - 1, d)


def projective_space_poly(n: int) -> WeightPolynomial:
    """Projective n-space: sum of Lambda(i)[2i], 0 <= i <= n."""
    if n < 0:
        raise ValueError("need n >= 0")
    return WeightPolynomial({(2 * i, i): 1 for i in range(n + 1)})


def punctured_affine_poly(d: int) -> WeightPolynomial:
    """Affine d-space minus a point: Lambda(0) + Lambda(d)[2d-1]."""
    if d < 1:
        raise ValueError("need d >= 1")
    return WeightPolynomial({(0, 0): 1, (2 * d - 1, d): 1})
