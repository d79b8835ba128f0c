"""Group homology of symmetric groups via the bar resolution.

The (normalized) bar complex of G with coefficients in a right module M
has C_q = M tensor Lambda[(G - e)^q] and the standard differential

    d(x[g1|...|gq]) = (x.g1)[g2|...|gq]
                      + sum_i (-1)^i x[g1|...|g_i g_{i+1}|...|gq]
                      + (-1)^q x[g1|...|g_{q-1}],

with tuples containing the identity declared zero in the normalized
version.  Modules arrive with a left action; x.g means rho(g^{-1}) x.

Two facts keep the large cells tractable:

* the image of d_{q+1} is already spanned by the columns with first slot
  in any generating set S of G.  Applying d to x[g1|g2|h...] and using
  dd = 0 rewrites d(x[g1 g2|h...]) as a combination of d-columns whose
  first slots are g1, g2 or shorter; induction on word length does the
  rest.  (Span equality against the full column set is property-tested.)
* homology never materializes C_{q+1}: its boundary columns are streamed
  straight into an echelon.

Functoriality of the bar construction in the group makes the
stabilization map canonical: S_n < S_{n+1} together with an equivariant
coefficient map induces a chain map x[g...] -> f(x)[incl(g)...].
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from functools import lru_cache

from .arnold import SigmaModule, homology_module, standard_inclusion_map
from .budget import DEFAULT_BUDGET, SizeBudget
from .chain import ChainComplex, HomologySummary, homology_from_streams, zero_summary
from .echelon import FieldEchelon
from .rings import Ring, ZZ
from .snf import invariant_factors_of_columns
from .sparse import SparseMatrix
from .symgroup import PermGroup


class EquivarianceError(Exception):
    """The coefficient map fails to intertwine the group actions; this
    signals a convention bug, not a mathematical failure."""


@dataclass(frozen=True)
class BarComplexSpec:
    group: PermGroup
    coefficients: SigmaModule
    q_max: int
    normalized: bool = True

    def __post_init__(self):
        if self.q_max < 0:
            raise ValueError("q_max must be nonnegative")


def module_action_columns(G: PermGroup, M: SigmaModule) -> list[list[dict]]:
    """Columns of the homology action matrix for every group element.

    acols[i][k] = column k of rho(g_i) as a dict.  Built by breadth-first
    multiplication over a Coxeter word graph so each element costs one
    sparse matrix product.
    """
    R = M.rank
    order = G.order
    if R == 0:
        return [[] for _ in range(order)]
    ident = [{k: 1} for k in range(R)]
    gen_cols = []
    for gmat in M.gen_matrices:
        cols = [dict() for _ in range(R)]
        for (i, j), c in gmat.entries.items():
            cols[j][i] = c
        gen_cols.append(cols)
    acols: list[list[dict] | None] = [None] * order
    acols[G.index[G.identity]] = ident
    ring = M.ring
    frontier = [G.identity]
    gens = G.coxeter_gens()
    while frontier:
        nxt = []
        for h in frontier:
            hcols = acols[G.index[h]]
            for gi, s in enumerate(gens):
                g = G.compose(s, h)
                idx = G.index[g]
                if acols[idx] is not None:
                    continue
                scols = gen_cols[gi]
                # rho(s h) = rho(s) rho(h): column k = rho(s) . hcols[k]
                new_cols = []
                for k in range(R):
                    out: dict[int, int] = {}
                    for i, c in hcols[k].items():
                        for i2, c2 in scols[i].items():
                            v = out.get(i2, 0) + c * c2
                            if v:
                                out[i2] = v
                            else:
                                out.pop(i2, None)
                    if ring.char:
                        out = {i2: v % ring.char for i2, v in out.items()}
                        out = {i2: v for i2, v in out.items() if v}
                    new_cols.append(out)
                acols[idx] = new_cols
                nxt.append(g)
        frontier = nxt
    return acols  # type: ignore[return-value]


class BarAssembler:
    """Index bookkeeping and differential columns for one (G, M, ring)."""

    def __init__(self, G: PermGroup, M: SigmaModule, ring: Ring,
                 normalized: bool = True):
        self.G = G
        self.M = M
        self.ring = ring
        self.normalized = normalized
        self.R = M.rank
        if normalized:
            self.slots = list(range(1, G.order))  # element indices, identity excluded
        else:
            self.slots = list(range(G.order))
        self.L = len(self.slots)
        self.slot_of_elem = {e: t for t, e in enumerate(self.slots)}
        self.acols = module_action_columns(G, M)

    def rank(self, q: int) -> int:
        return self.R * (self.L ** q)

    def tuple_index(self, elem_tuple: tuple[int, ...]) -> int:
        idx = 0
        for e in elem_tuple:
            idx = idx * self.L + self.slot_of_elem[e]
        return idx

    def boundary_column(self, elems: tuple[int, ...], k: int) -> dict[int, int]:
        """Column of d applied to e_k[g_1|...|g_q], indices into C_{q-1}."""
        G, R = self.G, self.R
        q = len(elems)
        out: dict[int, int] = {}
        # face 0: right action x.g1 = rho(g1^{-1}) x
        base = self.tuple_index(elems[1:]) * R
        for i, c in self.acols[G.inverse_index(elems[0])][k].items():
            v = out.get(base + i, 0) + c
            if v:
                out[base + i] = v
            else:
                out.pop(base + i, None)
        sign = 1
        for t in range(q - 1):
            sign = -sign
            merged = G.index[G.compose(G.elements[elems[t]], G.elements[elems[t + 1]])]
            if self.normalized and merged == 0:
                continue
            tup = elems[:t] + (merged,) + elems[t + 2:]
            pos = self.tuple_index(tup) * R + k
            v = out.get(pos, 0) + sign
            if v:
                out[pos] = v
            else:
                out.pop(pos, None)
        sign = -sign
        pos = self.tuple_index(elems[:-1]) * R + k
        v = out.get(pos, 0) + sign
        if v:
            out[pos] = v
        else:
            out.pop(pos, None)
        return out

    def dq_columns(self, q: int):
        """All columns of d_q: C_q -> C_{q-1} (lexicographic order)."""
        if q == 0:
            return
        for elems in product(self.slots, repeat=q):
            for k in range(self.R):
                yield self.boundary_column(elems, k)

    def restricted_boundary_columns(self, q_plus_1: int):
        """Columns of d_{q+1} with first slot restricted to a generating
        set; spans the same image as the full column set."""
        if q_plus_1 <= 0:
            return
        gens = [self.G.index[s] for s in self.G.span_gens()]
        for s in gens:
            for rest in product(self.slots, repeat=q_plus_1 - 1):
                for k in range(self.R):
                    yield self.boundary_column((s,) + rest, k)

    def full_boundary_columns(self, q_plus_1: int):
        if q_plus_1 <= 0:
            return
        for elems in product(self.slots, repeat=q_plus_1):
            for k in range(self.R):
                yield self.boundary_column(elems, k)


def bar_complex(spec: BarComplexSpec, ring: Ring = ZZ,
                budget: SizeBudget = DEFAULT_BUDGET) -> ChainComplex:
    """Materialize the bar complex up to degree q_max as a ChainComplex."""
    asm = BarAssembler(spec.group, spec.coefficients, ring, spec.normalized)
    ranks = {}
    for q in range(spec.q_max + 1):
        rk = asm.rank(q)
        budget.check_dim(rk, f"bar complex rank in degree {q}")
        ranks[q] = rk
    diffs = {}
    for q in range(1, spec.q_max + 1):
        cols = list(asm.dq_columns(q))
        diffs[q] = SparseMatrix.from_columns(ranks[q - 1], cols, ring)
    return ChainComplex(ranks, diffs, ring, validate=False)


_HOMOLOGY_CACHE: dict = {}


@lru_cache(maxsize=64)
def _perm_group(n: int) -> PermGroup:
    return PermGroup(n)


@lru_cache(maxsize=64)
def _assembler(n: int, m: int, r: int, ring: Ring) -> BarAssembler:
    return BarAssembler(_perm_group(n), homology_module(n, m, r, ring), ring)


def group_homology(n: int, m: int, r: int, q: int, ring: Ring = ZZ,
                   budget: SizeBudget = DEFAULT_BUDGET, want_basis: bool = True,
                   transform_cap: int = 3000) -> HomologySummary:
    """H_q(S_n; H_r(PConf_n(R^m); ring)) via the normalized bar complex."""
    bkey = (budget.max_dim, budget.max_columns, budget.max_entries)
    key = (n, m, r, q, ring, want_basis, transform_cap, bkey)
    hit = _HOMOLOGY_CACHE.get(key)
    if hit is not None:
        return hit
    # a basis-carrying result answers the basis-free question too
    hit = _HOMOLOGY_CACHE.get((n, m, r, q, ring, True, transform_cap, bkey))
    if hit is not None and hit.basis is not None:
        return hit
    M = homology_module(n, m, r, ring)
    out = group_homology_of_module(_perm_group(n), M, q, ring, budget,
                                   want_basis, transform_cap, asm=_assembler(n, m, r, ring))
    _HOMOLOGY_CACHE[key] = out
    return out


def group_homology_of_module(G: PermGroup, M: SigmaModule, q: int, ring: Ring,
                             budget: SizeBudget = DEFAULT_BUDGET,
                             want_basis: bool = True,
                             transform_cap: int = 3000,
                             asm: BarAssembler | None = None) -> HomologySummary:
    if q < 0 or M.rank == 0:
        return zero_summary(q, ring)
    if asm is None:
        asm = BarAssembler(G, M, ring)
    cq = asm.rank(q)
    cqm1 = asm.rank(q - 1) if q >= 1 else 0
    budget.check_dim(cq, "bar chain group dimension")
    n_boundary = M.rank * len(G.span_gens()) * (asm.L ** q)
    budget.check_columns(n_boundary, "restricted boundary columns")
    dq_cols = asm.dq_columns(q) if q >= 1 else None
    bnd_cols = asm.restricted_boundary_columns(q + 1)
    return homology_from_streams(ring, q, cq, cqm1, dq_cols, bnd_cols, budget,
                                 want_basis, transform_cap)


def coinvariants_summary(G: PermGroup, M: SigmaModule, ring: Ring,
                         budget: SizeBudget = DEFAULT_BUDGET) -> HomologySummary:
    """Independent H_0 oracle: quotient of M by {x - g.x} over ALL group
    elements (not just generators, and no bar complex)."""
    R = M.rank
    if R == 0:
        return zero_summary(0, ring)
    asm = BarAssembler(G, M, ring)

    def relation_columns():
        for gi in range(G.order):
            cols = asm.acols[gi]
            for k in range(R):
                out = dict(cols[k])
                out[k] = out.get(k, 0) - 1
                yield {i: c for i, c in out.items() if c}

    return homology_from_streams(ring, 0, R, 0, None, relation_columns(), budget,
                                 want_basis=True)


# --------------------------------------------------------------------------
# the stabilization map


@dataclass
class InducedMapResult:
    """One stabilization cell: H_q(S_n; M_n) -> H_q(S_{n+1}; M_{n+1})."""

    n: int
    q: int
    ring: Ring
    source: HomologySummary
    target: HomologySummary
    matrix: list[list] | None
    surjective: bool
    invariants_equal: bool

    @property
    def is_iso(self) -> bool:
        # equal invariant factor lists + surjectivity force bijectivity
        # for finitely generated abelian groups
        return self.invariants_equal and self.surjective


def _map_cycle(rep: dict, src_asm: BarAssembler, tgt_asm: BarAssembler,
               fcols: list[list[tuple[int, int]]], inc_slot: list[int],
               q: int, ring: Ring) -> dict:
    """Push a chain through x[g...] -> f(x)[incl(g)...]."""
    R1 = src_asm.R
    L1, L2 = src_asm.L, tgt_asm.L
    R2 = tgt_asm.R
    out: dict[int, int] = {}
    for pos, c in rep.items():
        k = pos % R1
        tup_idx = pos // R1
        tgt_tuple_idx = 0
        for t in range(q - 1, -1, -1):
            slot = (tup_idx // (L1 ** t)) % L1
            tgt_tuple_idx = tgt_tuple_idx * L2 + inc_slot[slot]
        base = tgt_tuple_idx * R2
        for (k2, c2) in fcols[k]:
            v = out.get(base + k2, 0) + c * c2
            if v:
                out[base + k2] = v
            else:
                out.pop(base + k2, None)
    if ring.char:
        out = {i: v % ring.char for i, v in out.items()}
        out = {i: v for i, v in out.items() if v}
    return out


def check_equivariance(G: PermGroup, f: SparseMatrix, M_src: SigmaModule,
                       M_tgt: SigmaModule) -> None:
    """The coefficient map must intertwine S_n with S_n < S_{n+1}."""
    for i, s in enumerate(G.coxeter_gens()):
        lhs = f @ M_src.gen_matrices[i]
        rhs = M_tgt.gen_matrices[i] @ f
        if lhs != rhs:
            raise EquivarianceError(
                f"coefficient map not equivariant for generator {i}")


def _surjective_int(target: HomologySummary, mapped: list[dict],
                    budget: SizeBudget) -> bool:
    """Do the mapped cycles generate the integer homology of the target?

    Works in class coordinates: the target group is Z^gens modulo the
    diagonal torsion relations, and the map is onto exactly when the
    coordinate columns together with those relations present the trivial
    group.
    """
    basis = target.basis
    gens = target.gens()
    if gens == 0:
        return True
    cols = []
    for vec in mapped:
        coords = basis.coords(vec)
        cols.append({i: c for i, c in enumerate(coords) if c})
    for t, d in enumerate(target.torsion):
        cols.append({t: d})
    factors = invariant_factors_of_columns(cols, gens, budget)
    return len(factors) == gens and all(d == 1 for d in factors)


def stability_map(n: int, m: int, r: int, q: int, ring: Ring = ZZ,
                  budget: SizeBudget = DEFAULT_BUDGET,
                  transform_cap: int = 3000) -> InducedMapResult:
    """The stabilization cell at (n, m, r, q): bar functoriality for
    S_n < S_{n+1} tensored with the coefficient stabilization."""
    M_src = homology_module(n, m, r, ring)
    M_tgt = homology_module(n + 1, m, r, ring)
    if q < 0 or (M_src.rank == 0 and M_tgt.rank == 0):
        src = zero_summary(q, ring)
        tgt = zero_summary(q, ring)
        return InducedMapResult(n, q, ring, src, tgt, [], True, True)
    G1, G2 = _perm_group(n), _perm_group(n + 1)
    f = standard_inclusion_map(n, m, r, ring)
    check_equivariance(G1, f, M_src, M_tgt)

    src = group_homology(n, m, r, q, ring, budget, want_basis=True,
                         transform_cap=transform_cap)
    tgt = group_homology(n + 1, m, r, q, ring, budget, want_basis=True,
                         transform_cap=transform_cap)
    invariants_equal = src.invariants() == tgt.invariants()

    if src.basis is None:
        raise AssertionError("source basis must exist (sources are the small side)")

    src_asm = _assembler(n, m, r, ring)
    tgt_asm = _assembler(n + 1, m, r, ring)
    inc_slot = [tgt_asm.slot_of_elem[G2.index[G1.include(G1.elements[e], n + 1)]]
                for e in src_asm.slots]
    fcols: list[list[tuple[int, int]]] = [[] for _ in range(max(M_src.rank, 1))]
    for (i, j), c in f.entries.items():
        fcols[j].append((i, c))
    for col in fcols:
        col.sort()

    mapped = [_map_cycle(rep, src_asm, tgt_asm, fcols, inc_slot, q, ring)
              for rep in src.basis.representatives()]

    if tgt.basis is not None:
        cols = [tgt.basis.coords(vec) for vec in mapped]
        ngen = tgt.gens()
        matrix = [[cols[j][i] for j in range(len(cols))] for i in range(ngen)]
        if ring is ZZ:
            surjective = _surjective_int(tgt, mapped, budget)
        else:
            fe = FieldEchelon(ngen, ring.char if ring.char else None)
            for col in cols:
                fe.add_column({i: c for i, c in enumerate(col) if c})
            surjective = fe.rank == ngen
        return InducedMapResult(n, q, ring, src, tgt, matrix, surjective,
                                invariants_equal)

    # certificate path: no target coordinates; test lattice surjectivity
    # Z_q = B_q + span(mapped) by rerunning the quotient with the mapped
    # cycles adjoined
    asm = tgt_asm
    cq = asm.rank(q)
    cqm1 = asm.rank(q - 1) if q >= 1 else 0

    def augmented():
        yield from asm.restricted_boundary_columns(q + 1)
        yield from mapped

    quot = homology_from_streams(ring, q, cq, cqm1,
                                 asm.dq_columns(q) if q >= 1 else None,
                                 augmented(), budget, want_basis=False,
                                 transform_cap=transform_cap)
    surjective = quot.is_trivial()
    return InducedMapResult(n, q, ring, src, tgt, None, surjective,
                            invariants_equal)
