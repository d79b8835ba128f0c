"""Stability verification campaigns.

A cell at index n compares H at S_n with H at S_{n+1} through the
stabilization map; the classical range is n >= 2q (trivial
coefficients), the twisted range q <= n/2 - r/(m-1), and the weight
filtration identifies the l-th homology of the weight-kd piece of the
n-point configuration of affine d-space with twisted group homology in
degree q = l - k(2d-1) with coefficients H_{k(2d-1)}(PConf_n(C^d)),
asserted in the range l <= n/2 (the wider range l <= n/2 + k(2d-1) - k
is recorded per cell).

When the coefficient ring is "auto", each cell picks the coefficients it
can afford exactly: integers when the relevant chain group is small
(complete with torsion and transform-backed bases), the two-element
field when reaching the large symmetric groups where integer
diagonalization is out of budget.  Over- and under-sized cells are never
silently truncated; they come back marked skipped.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .arnold import homology_module
from .bar import InducedMapResult, stability_map
from .budget import BudgetExceededError, DEFAULT_BUDGET, SizeBudget
from .chain import HomologySummary
from .rings import GF, QQ, Ring, ZZ
from .symgroup import PermGroup


# chain groups up to this size get the integer treatment under "auto";
# beyond it Smith transforms are out of reach and GF(2) takes over
AUTO_INT_DIM_CAP = 2600

# out-of-range cells are informational only; under "auto" they are not
# worth hours of echelon time, so they skip beyond this size
AUTO_INFO_DIM_CAP = 25_000


@dataclass(frozen=True)
class CellKey:
    kind: str
    n: int
    q: int
    m: int = 0
    r: int = 0
    d: int = 0
    k: int = 0
    l: int = 0

    def sort_key(self):
        return (self.kind, self.m, self.r, self.d, self.k, self.l, self.q, self.n)


@dataclass
class StabilityCell:
    key: CellKey
    ring_name: str
    predicted_stable: bool
    in_wider_range: bool | None = None
    source: tuple[int, tuple[int, ...]] | None = None
    target: tuple[int, tuple[int, ...]] | None = None
    matrix: list[list] | None = None
    surjective: bool | None = None
    invariants_equal: bool | None = None
    is_iso: bool | None = None
    skipped: bool = False
    skip_reason: str | None = None

    @property
    def violation(self) -> bool:
        return self.predicted_stable and not self.skipped and self.is_iso is False

    @property
    def required_skip(self) -> bool:
        return self.predicted_stable and self.skipped


@dataclass
class StabilityReport:
    kind: str
    params: dict
    cells: list[StabilityCell] = field(default_factory=list)

    @property
    def violations(self) -> list[StabilityCell]:
        return [c for c in self.cells if c.violation]

    @property
    def required_skips(self) -> list[StabilityCell]:
        return [c for c in self.cells if c.required_skip]

    @property
    def passed(self) -> bool:
        return not self.violations and not self.required_skips

    def summary(self) -> dict:
        return {
            "cells": len(self.cells),
            "asserted": sum(1 for c in self.cells if c.predicted_stable),
            "passes": sum(1 for c in self.cells
                          if c.predicted_stable and c.is_iso is True),
            "violations": len(self.violations),
            "skipped": sum(1 for c in self.cells if c.skipped),
            "required_skips": len(self.required_skips),
        }


def _bar_dim(n: int, rank: int, q: int) -> int:
    """Dimension of the degree-q normalized bar chain group."""
    from math import factorial
    return rank * (factorial(n) - 1) ** q


def pick_ring(ring: Ring | str, n: int, m: int, r: int, q: int,
              budget: SizeBudget, asserted: bool = True) -> Ring | None:
    """Resolve the "auto" coefficient policy for the cell at n -> n+1.

    Integer coefficients whenever the target chain group in degree q is
    small enough for transform-backed Smith normal form; otherwise GF(2).
    Returns None when the cell should be skipped (out of budget, or an
    unasserted cell beyond the informational cap).
    """
    if isinstance(ring, Ring):
        return ring
    rank_tgt = len_basis(n + 1, m, r)
    dim = _bar_dim(n + 1, rank_tgt, q)
    if dim <= AUTO_INT_DIM_CAP:
        return ZZ
    if not asserted and dim > AUTO_INFO_DIM_CAP:
        return None
    if dim <= budget.max_dim:
        return GF(2)
    return None


def len_basis(n: int, m: int, r: int) -> int:
    from .arnold import admissible_basis
    return len(admissible_basis(n, m, r))


def _describe(s: HomologySummary) -> tuple[int, tuple[int, ...]]:
    return (s.free_rank, s.torsion)


def _run_cell(key: CellKey, ring: Ring | str, m: int, r: int,
              predicted: bool, wider: bool | None,
              budget: SizeBudget) -> StabilityCell:
    resolved = pick_ring(ring, key.n, m, r, key.q, budget, asserted=predicted)
    if resolved is None:
        return StabilityCell(key, "auto", predicted, wider, skipped=True,
                             skip_reason="size budget exceeded")
    try:
        res: InducedMapResult = stability_map(key.n, m, r, key.q, resolved, budget)
    except BudgetExceededError as e:
        return StabilityCell(key, str(resolved), predicted, wider, skipped=True,
                             skip_reason=str(e))
    matrix = res.matrix
    return StabilityCell(
        key, str(resolved), predicted, wider,
        source=_describe(res.source), target=_describe(res.target),
        matrix=matrix, surjective=res.surjective,
        invariants_equal=res.invariants_equal, is_iso=res.is_iso,
    )


def _run_cells(jobs: int, tasks: list) -> list[StabilityCell]:
    if jobs <= 1 or len(tasks) <= 1:
        cells = [t() for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            cells = list(pool.map(lambda t: t(), tasks))
    return sorted(cells, key=lambda c: c.key.sort_key())


def check_classical(q_max: int, n_max: int, ring: Ring | str = "auto",
                    budget: SizeBudget = DEFAULT_BUDGET,
                    jobs: int = 1) -> StabilityReport:
    """Homology of symmetric groups with trivial coefficients:
    H_q(S_n) -> H_q(S_{n+1}) is an isomorphism for n >= 2q.

    n indexes the cells (the map out of S_n), running 1 .. n_max; the
    largest group touched is S_{n_max+1}.
    """
    report = StabilityReport("classical", {"q_max": q_max, "n_max": n_max,
                                           "ring": str(ring)})
    tasks = []
    for q in range(q_max + 1):
        for n in range(1, n_max + 1):
            key = CellKey("classical", n, q)
            predicted = n >= 2 * q
            tasks.append(lambda key=key, predicted=predicted:
                         _run_cell(key, ring, 2, 0, predicted, None, budget))
    report.cells = _run_cells(jobs, tasks)
    return report


def twisted_range_ok(n: int, q: int, m: int, r: int) -> bool:
    return Fraction(q) <= Fraction(n, 2) - Fraction(r, m - 1)


def check_twisted(m: int, r: int, q_max: int, n_max: int,
                  ring: Ring | str = "auto",
                  budget: SizeBudget = DEFAULT_BUDGET,
                  jobs: int = 1) -> StabilityReport:
    """Twisted stability: H_q(S_n; H_r(PConf_n(R^m))) stabilizes for
    q <= n/2 - r/(m-1).  Cells run at n = 1 .. n_max (n indexes the map
    to n+1)."""
    if m < 2:
        raise ValueError("need m >= 2")
    report = StabilityReport("twisted", {"m": m, "r": r, "q_max": q_max,
                                         "n_max": n_max, "ring": str(ring)})
    tasks = []
    for q in range(q_max + 1):
        for n in range(1, n_max + 1):
            key = CellKey("twisted", n, q, m=m, r=r)
            predicted = twisted_range_ok(n, q, m, r)
            tasks.append(lambda key=key, predicted=predicted:
                         _run_cell(key, ring, m, r, predicted, None, budget))
    report.cells = _run_cells(jobs, tasks)
    return report


def check_weight_piece(d: int, k: int, l_max: int, n_max: int,
                       ring: Ring | str = "auto",
                       budget: SizeBudget = DEFAULT_BUDGET,
                       jobs: int = 1) -> StabilityReport:
    """Stability of the weight-kd piece of configurations in affine
    d-space: realized as the twisted cell with m = 2d, r = k(2d-1),
    q = l - k(2d-1); asserted for l <= n/2, with the wider range
    l <= n/2 + k(2d-1) - k recorded."""
    if d < 1 or k < 0:
        raise ValueError("need d >= 1 and k >= 0")
    m = 2 * d
    r = k * (2 * d - 1)
    report = StabilityReport("weight-piece", {"d": d, "k": k, "l_max": l_max,
                                              "n_max": n_max, "ring": str(ring)})
    tasks = []
    for l in range(l_max + 1):
        for n in range(1, n_max + 1):
            q = l - k * (2 * d - 1)
            key = CellKey("weight-piece", n, q, m=m, r=r, d=d, k=k, l=l)
            predicted = Fraction(l) <= Fraction(n, 2)
            wider = Fraction(l) <= Fraction(n, 2) + k * (2 * d - 1) - k
            tasks.append(lambda key=key, predicted=predicted, wider=wider:
                         _run_cell(key, ring, m, r, predicted, wider, budget))
    report.cells = _run_cells(jobs, tasks)
    return report
