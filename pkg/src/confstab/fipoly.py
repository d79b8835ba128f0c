"""Finitary polynomiality of the configuration-space homology functor.

T(n) = H_r(PConf_n(R^m)) is a functor on finite sets and injections.
Its generation degree is detected by the cokernels

    T(n) / span{ images of all injections from an (n-1)-set },

which vanish exactly above the generation degree; for these coefficient
modules the degree is bounded by floor(2r/(m-1)) (the monomial count of
the presented cohomology ring grows like binom(n, 2)^(r/(m-1))).

The span over all injections equals the span of the standard inclusion's
image together with its S_n-translates, and since that image is stable
under S_{n-1}, translates over coset representatives of S_n / S_{n-1}
suffice; the smaller span is what we compute, and the equality of the
two spans is validated on small instances by the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import comb

from .arnold import SigmaModule, admissible_basis, fi_map, homology_module
from .budget import DEFAULT_BUDGET, SizeBudget
from .chain import HomologySummary, homology_from_streams
from .rings import Ring, ZZ
from .symgroup import PermGroup


@dataclass(frozen=True)
class FiFamily:
    """The injection-functorial family n -> H_r(PConf_n(R^m); ring)."""

    m: int
    r: int
    ring: Ring = ZZ

    def module(self, n: int) -> SigmaModule:
        return homology_module(n, self.m, self.r, self.ring)

    def map(self, phi, N: int):
        """Matrix of the injection phi: {1..n} -> {1..N} on the family."""
        return fi_map(phi, N, self.m, self.r, self.ring)


def _translate_columns(F: FiFamily, n: int):
    """Columns spanning the images of all injections from an (n-1)-set:
    the standard inclusion composed with S_n / S_{n-1} coset
    representatives (the transpositions (t, n))."""
    M_n = F.module(n)
    inc = F.map(tuple(range(1, n)), n)
    inc_cols = inc.columns()
    group = PermGroup(n)
    for t in range(1, n + 1):
        sigma = group.transposition(t - 1, n - 1)
        act = M_n.action(sigma)
        for col in inc_cols:
            yield act.apply(col)


def all_injection_columns(F: FiFamily, n: int):
    """Columns of the images of every injection {1..n-1} -> {1..n}
    (the expensive oracle; for span-equality validation)."""
    for images in permutations(range(1, n + 1), n - 1):
        mat = F.map(images, n)
        yield from mat.columns()


def h0_cokernel(F: FiFamily, n: int, budget: SizeBudget = DEFAULT_BUDGET,
                use_all_injections: bool = False) -> HomologySummary:
    """T(n) modulo the images of everything from level n-1."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rank = F.module(n).rank
    cols = (all_injection_columns(F, n) if use_all_injections
            else _translate_columns(F, n))
    return homology_from_streams(F.ring, n, rank, 0, None, cols, budget,
                                 want_basis=True)


@dataclass(frozen=True)
class GenerationDegreeReport:
    m: int
    r: int
    n_max: int
    degree: int
    bound: int
    cokernel_ranks: tuple[tuple[int, int], ...]  # (n, generator count)
    skipped: tuple[int, ...] = ()

    @property
    def bound_holds(self) -> bool:
        return not self.skipped and self.degree <= self.bound


def generation_degree(F: FiFamily, n_max: int,
                      budget: SizeBudget = DEFAULT_BUDGET) -> GenerationDegreeReport:
    """Largest n <= n_max where new generators appear; asserted against
    the polynomiality bound floor(2r/(m-1)) when nothing was skipped."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    from .budget import BudgetExceededError
    degree = 0
    ranks = []
    skipped = []
    for n in range(1, n_max + 1):
        try:
            summary = h0_cokernel(F, n, budget)
        except BudgetExceededError:
            skipped.append(n)
            continue
        gens = summary.gens()
        ranks.append((n, gens))
        if gens:
            degree = n
    bound = (2 * F.r) // (F.m - 1)
    report = GenerationDegreeReport(F.m, F.r, n_max, degree, bound,
                                    tuple(ranks), tuple(skipped))
    if not report.skipped and degree > bound:
        raise AssertionError(
            f"generation degree {degree} exceeds polynomiality bound {bound}")
    return report


@lru_cache(maxsize=None)
def monomial_count_bound(n: int, i: int) -> tuple[int, int]:
    """(#admissible basis in i factors, binom(n,2)^i), with the first
    asserted <= the second."""
    if n < 0 or i < 0:
        raise ValueError("need n >= 0 and i >= 0")
    count = len(admissible_basis(n, 2, i))
    bound = comb(n, 2) ** i
    if count > bound:
        raise AssertionError("admissible count exceeds monomial bound")
    return count, bound
