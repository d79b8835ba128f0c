"""Bounded chain complexes, chain maps, homology, induced maps.

Homology is computed in two stages that never materialize anything
larger than the two relevant differentials: the cycle space of d_q is
extracted by streaming its columns through a tracked echelon (emitted
kernel combinations form a basis of the cycle lattice), and boundaries
are streamed into a second echelon.  Over Z the quotient is presented by
rewriting boundary columns in cycle coordinates and taking a Smith
normal form, whose row transform fixes a deterministic homology basis;
over a field the quotient is handled by rank arithmetic plus an
extension basis read off from reduced kernel vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .budget import DEFAULT_BUDGET, SizeBudget
from .echelon import Bit2Echelon, FieldEchelon, IntEchelon
from .rings import QQ, Ring, ZZ
from .snf import invariant_factors_of_columns, snf_with_row_transform
from .sparse import SparseMatrix


class BasesNotComputedError(Exception):
    """Raised when induced-map coordinates are requested but a homology
    basis was not produced (oversize integer cells drop transforms)."""


# --------------------------------------------------------------------------
# complexes and maps


class ChainComplex:
    """Bounded complex of free modules with exact differentials.

    ranks: dict degree -> rank over a contiguous degree range.
    differentials: dict q -> SparseMatrix of shape ranks[q-1] x ranks[q],
    for every q with both q and q-1 in range.  Validates d(q) d(q+1) = 0.
    """

    def __init__(self, ranks: dict[int, int], differentials: dict[int, SparseMatrix],
                 ring: Ring = ZZ, validate: bool = True):
        if not ranks:
            raise ValueError("empty complex")
        degs = sorted(ranks)
        if degs != list(range(degs[0], degs[-1] + 1)):
            raise ValueError("degrees must be contiguous")
        self.lo, self.hi = degs[0], degs[-1]
        self.ranks = dict(ranks)
        self.ring = ring
        self.differentials = {}
        for q in range(self.lo + 1, self.hi + 1):
            d = differentials.get(q)
            if d is None:
                d = SparseMatrix.zero(self.ranks[q - 1], self.ranks[q], ring)
            if (d.nrows, d.ncols) != (self.ranks[q - 1], self.ranks[q]):
                raise ValueError(f"differential {q} has shape {d.nrows}x{d.ncols}, "
                                 f"expected {self.ranks[q-1]}x{self.ranks[q]}")
            self.differentials[q] = d
        if validate:
            for q in range(self.lo + 2, self.hi + 1):
                if not (self.differentials[q - 1] @ self.differentials[q]).is_zero():
                    raise ValueError(f"d{q-1} d{q} != 0")

    def rank(self, q: int) -> int:
        return self.ranks.get(q, 0)

    def differential(self, q: int) -> SparseMatrix:
        d = self.differentials.get(q)
        if d is None:
            return SparseMatrix.zero(self.rank(q - 1), self.rank(q), self.ring)
        return d

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)


class ChainMap:
    """Degreewise map of complexes commuting with the differentials."""

    def __init__(self, source: ChainComplex, target: ChainComplex,
                 components: dict[int, SparseMatrix], validate: bool = True):
        self.source = source
        self.target = target
        self.components = {}
        lo = min(source.lo, target.lo)
        hi = max(source.hi, target.hi)
        for q in range(lo, hi + 1):
            f = components.get(q)
            if f is None:
                f = SparseMatrix.zero(target.rank(q), source.rank(q), source.ring)
            if (f.nrows, f.ncols) != (target.rank(q), source.rank(q)):
                raise ValueError(f"component {q} has wrong shape")
            self.components[q] = f
        if validate:
            for q in range(lo + 1, hi + 1):
                lhs = self.target.differential(q) @ self.components[q]
                rhs = self.components[q - 1] @ self.source.differential(q)
                if lhs != rhs:
                    raise ValueError(f"not a chain map in degree {q}")

    def component(self, q: int) -> SparseMatrix:
        f = self.components.get(q)
        if f is None:
            return SparseMatrix.zero(self.target.rank(q), self.source.rank(q),
                                     self.source.ring)
        return f

    @classmethod
    def identity(cls, c: ChainComplex) -> "ChainMap":
        comps = {q: SparseMatrix.identity(c.rank(q), c.ring) for q in c.degrees()}
        return cls(c, c, comps, validate=False)

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self after other."""
        if other.target is not self.source and other.target.ranks != self.source.ranks:
            raise ValueError("composition shape mismatch")
        comps = {}
        lo = min(other.source.lo, self.target.lo)
        hi = max(other.source.hi, self.target.hi)
        for q in range(lo, hi + 1):
            comps[q] = self.component(q) @ other.component(q)
        return ChainMap(other.source, self.target, comps, validate=False)


# --------------------------------------------------------------------------
# homology summaries and bases


class LatticeSolver:
    """Express integer vectors exactly in a given lattice basis.

    The basis vectors are echelonized once with expressions tracked over
    basis indices; solve() then reduces a vector through the pivots
    collecting the combination.  Divisions are exact for members, and
    membership failures raise.
    """

    def __init__(self, basis: list[dict], ambient: int,
                 budget: SizeBudget | None = None):
        self.basis = basis
        self.ech = IntEchelon(ambient, budget)
        self.row_exprs: dict[int, dict[int, int]] = {}
        for t, vec in enumerate(basis):
            inserted_at = self._feed(vec, t)
            if inserted_at is None:
                raise ValueError("lattice basis vectors are dependent")

    def _feed(self, vec: dict, t: int):
        # like IntEchelon.add_column but with expressions over basis indices
        ech = self.ech
        vec = dict(vec)
        expr = {t: 1}
        from heapq import heapify, heappop, heappush
        heap = list(vec.keys())
        heapify(heap)
        while heap:
            j = heappop(heap)
            b = vec.get(j, 0)
            if b == 0:
                continue
            row = ech.rows.get(j)
            if row is None:
                if b < 0:
                    vec = {c: -v for c, v in vec.items() if v}
                    expr = {c: -v for c, v in expr.items()}
                else:
                    vec = {c: v for c, v in vec.items() if v}
                ech.rows[j] = vec
                self.row_exprs[j] = expr
                ech.rank += 1
                ech.nnz += len(vec)
                if ech.budget is not None:
                    ech.budget.check_entries(ech.nnz, "cycle lattice entries")
                return j
            a = row[j]
            if b % a == 0:
                q = b // a
                for c, v in row.items():
                    nv = vec.get(c, 0) - q * v
                    if nv:
                        if c not in vec:
                            heappush(heap, c)
                        vec[c] = nv
                    else:
                        vec.pop(c, None)
                rexpr = self.row_exprs[j]
                for c, v in rexpr.items():
                    nv = expr.get(c, 0) - q * v
                    if nv:
                        expr[c] = nv
                    else:
                        expr.pop(c, None)
            else:
                from .echelon import xgcd
                g, x, y = xgcd(a, b)
                mbg, ag = -(b // g), a // g
                new_row = {}
                for c in set(row) | set(vec):
                    ra, vb = row.get(c, 0), vec.get(c, 0)
                    nr = x * ra + y * vb
                    nv = mbg * ra + ag * vb
                    if nr:
                        new_row[c] = nr
                    if nv != vb:
                        if nv:
                            if c not in vec:
                                heappush(heap, c)
                            vec[c] = nv
                        else:
                            vec.pop(c, None)
                ech.rows[j] = new_row
                rexpr = self.row_exprs[j]
                new_rexpr = {}
                for c in set(rexpr) | set(expr):
                    ra, vb = rexpr.get(c, 0), expr.get(c, 0)
                    nr = x * ra + y * vb
                    nv = mbg * ra + ag * vb
                    if nr:
                        new_rexpr[c] = nr
                    if nv:
                        expr[c] = nv
                    else:
                        expr.pop(c, None)
                self.row_exprs[j] = new_rexpr
        return None

    def solve(self, vec: dict) -> dict:
        """Return w with sum_t w[t] * basis[t] == vec, exactly."""
        from heapq import heapify, heappop, heappush
        ech = self.ech
        vec = dict(vec)
        acc: dict[int, int] = {}
        heap = list(vec.keys())
        heapify(heap)
        while heap:
            j = heappop(heap)
            b = vec.get(j, 0)
            if b == 0:
                continue
            row = ech.rows.get(j)
            if row is None or b % row[j] != 0:
                raise ValueError("vector is not in the cycle lattice")
            q = b // row[j]
            for c, v in row.items():
                nv = vec.get(c, 0) - q * v
                if nv:
                    if c not in vec:
                        heappush(heap, c)
                    vec[c] = nv
                else:
                    vec.pop(c, None)
            for c, v in self.row_exprs[j].items():
                nv = acc.get(c, 0) + q * v
                if nv:
                    acc[c] = nv
                else:
                    acc.pop(c, None)
        if any(vec.values()):
            raise ValueError("vector is not in the cycle lattice")
        return acc


class IntBasis:
    """Deterministic integer homology basis from the Smith transform.

    The cycle lattice has basis K; boundaries in K-coordinates were
    diagonalized as U X V = diag(factors); classes live in the quotient
    by the diagonal lattice, read off through U.  Generators are
    ordered: torsion factors (in divisibility order), then free
    generators.
    """

    def __init__(self, K, solver: LatticeSolver, factors, row_order, u_rows,
                 uinv_cols, z):
        self.K = K
        self.solver = solver
        self.factors = factors
        self.z = z
        rank = len(factors)
        spare = [i for i in range(z) if i not in set(row_order)]
        self.ordered_rows = list(row_order) + spare
        self.u_rows = u_rows
        self.uinv_cols = uinv_cols
        self.torsion_pos = [t for t in range(rank) if factors[t] > 1]
        self.free_pos = list(range(rank, z))
        self.gen_pos = self.torsion_pos + self.free_pos

    def solve_cycle(self, vec: dict) -> dict:
        return self.solver.solve(vec)

    def representatives(self) -> list[dict]:
        reps = []
        for pos in self.gen_pos:
            wcol = self.uinv_cols[self.ordered_rows[pos]]
            cyc: dict[int, int] = {}
            for t, c in wcol.items():
                for col, v in self.K[t].items():
                    nv = cyc.get(col, 0) + c * v
                    if nv:
                        cyc[col] = nv
                    else:
                        cyc.pop(col, None)
            reps.append(cyc)
        return reps

    def coords(self, vec: dict) -> list[int]:
        w = self.solve_cycle(vec)
        out = []
        rank = len(self.factors)
        for pos in self.gen_pos:
            urow = self.u_rows[self.ordered_rows[pos]]
            y = sum(c * w.get(t, 0) for t, c in urow.items())
            if pos < rank:
                y %= self.factors[pos]
            out.append(y)
        return out


class FieldBasis:
    """Homology basis over GF(p) or Q: boundary reducer plus extension
    rows carrying coordinate tags."""

    def __init__(self, p, bnd: FieldEchelon, mini: FieldEchelon, reps: list[dict]):
        self.p = p
        self.bnd = bnd
        self.mini = mini
        self.reps = reps

    def representatives(self) -> list[dict]:
        return self.reps

    def coords(self, vec: dict) -> list:
        r = self.bnd.reduce(vec)
        tags: dict = {}
        rem = self.mini.reduce(r, collect_tags=tags)
        if rem:
            raise ValueError("vector is not a cycle modulo boundaries")
        out = []
        for i in range(len(self.reps)):
            v = tags.get(i, 0)
            # reduce() accumulated -coefficients; flip sign
            if self.p is not None:
                out.append((-v) % self.p)
            else:
                out.append(-v if v else Fraction(0))
        return out


class Bit2Basis:
    """Homology basis over GF(2) with bitmask machinery."""

    def __init__(self, bnd: Bit2Echelon, mini: Bit2Echelon, reps: list[dict]):
        self.bnd = bnd
        self.mini = mini
        self.reps = reps

    def representatives(self) -> list[dict]:
        return self.reps

    def coords(self, vec: dict) -> list[int]:
        v = Bit2Echelon.to_bits(vec)
        r, _ = self.bnd.reduce(v)
        rem, tags = self.mini.reduce(r)
        if rem:
            raise ValueError("vector is not a cycle modulo boundaries")
        return [(tags >> i) & 1 for i in range(len(self.reps))]


@dataclass
class HomologySummary:
    """One homology group: free rank, invariant factors > 1, and (when
    affordable) a deterministic basis able to express cycles in class
    coordinates."""

    degree: int
    ring: Ring
    free_rank: int
    torsion: tuple[int, ...] = ()
    basis: object | None = None
    cycle_rank: int = 0

    def invariants(self) -> tuple[int, tuple[int, ...]]:
        return self.free_rank, self.torsion

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def gens(self) -> int:
        return self.free_rank + len(self.torsion)

    def describe(self) -> str:
        parts = []
        if self.free_rank:
            parts.append(f"Z^{self.free_rank}" if self.ring is ZZ else
                         f"{self.ring}^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def expected_field_dim(self, p: int, lower: "HomologySummary | None") -> int:
        """Universal-coefficient dimension over GF(p) from integer data."""
        dim = self.free_rank + sum(1 for d in self.torsion if d % p == 0)
        if lower is not None:
            dim += sum(1 for d in lower.torsion if d % p == 0)
        return dim


# --------------------------------------------------------------------------
# the streaming engine


def zero_summary(degree: int, ring: Ring) -> HomologySummary:
    return HomologySummary(degree, ring, 0, (), _EmptyBasis(), 0)


class _EmptyBasis:
    def representatives(self) -> list:
        return []

    def coords(self, vec: dict) -> list:
        if vec:
            raise ValueError("nonzero vector in zero module")
        return []


def homology_from_streams(ring: Ring, degree: int, cq_dim: int, cqm1_dim: int,
                          dq_columns, boundary_columns,
                          budget: SizeBudget = DEFAULT_BUDGET,
                          want_basis: bool = True,
                          transform_cap: int = 3000) -> HomologySummary:
    """Homology of ... -> C_{q+1} -> C_q -> C_{q-1} -> ... given the
    columns of d_q (None when C_{q-1} = 0 or q is the bottom degree) and
    any spanning set of columns for the image of d_{q+1}."""
    budget.check_dim(cq_dim, "chain group dimension")
    budget.check_dim(cqm1_dim, "chain group dimension")
    if cq_dim == 0:
        return zero_summary(degree, ring)
    if ring is ZZ or (ring is QQ and want_basis is False):
        return _homology_int(ring, degree, cq_dim, cqm1_dim, dq_columns,
                             boundary_columns, budget, want_basis, transform_cap)
    if ring.char == 2:
        return _homology_gf2(degree, cq_dim, cqm1_dim, dq_columns,
                             boundary_columns, budget, want_basis)
    p = ring.char if ring.char else None
    return _homology_field(ring, p, degree, cq_dim, cqm1_dim, dq_columns,
                           boundary_columns, budget, want_basis)


def _kernel_int(cq_dim, cqm1_dim, dq_columns, budget):
    if dq_columns is None:
        return [{j: 1} for j in range(cq_dim)], list(range(cq_dim)), 0
    ech = IntEchelon(cqm1_dim, budget, track=True)
    K, leads = [], []
    count = 0
    for col in dq_columns:
        expr = ech.add_column(col, tag=count)
        count += 1
        if expr is not None:
            K.append(expr)
            leads.append(count - 1)
    if count != cq_dim:
        raise ValueError("column stream length does not match chain rank")
    return K, leads, ech.rank


def _homology_int(ring, degree, cq_dim, cqm1_dim, dq_columns, boundary_columns,
                  budget, want_basis, transform_cap):
    K, _leads, _ = _kernel_int(cq_dim, cqm1_dim, dq_columns, budget)
    z = len(K)
    solver = LatticeSolver(K, cq_dim, budget) if z else None

    xcols = []
    ncols = 0
    for col in boundary_columns:
        ncols += 1
        budget.check_columns(ncols, "boundary columns")
        if not col:
            continue
        if solver is None:
            raise ValueError("nonzero boundary in zero cycle space")
        w = solver.solve(col)
        if w:
            xcols.append(w)

    if ring is QQ:
        ech = IntEchelon(z, budget)
        for w in xcols:
            ech.add_column(w)
        return HomologySummary(degree, ring, z - ech.rank, (), None, z)

    if want_basis and z <= transform_cap:
        factors, row_order, u_rows, uinv_cols = snf_with_row_transform(xcols, z, budget)
        basis = IntBasis(K, solver, factors, row_order, u_rows, uinv_cols, z)
        torsion = tuple(d for d in factors if d > 1)
        return HomologySummary(degree, ring, z - len(factors), torsion, basis, z)
    factors = invariant_factors_of_columns(xcols, z, budget)
    torsion = tuple(d for d in factors if d > 1)
    return HomologySummary(degree, ring, z - len(factors), torsion, None, z)


def _homology_gf2(degree, cq_dim, cqm1_dim, dq_columns, boundary_columns,
                  budget, want_basis):
    from .rings import GF
    ring = GF(2)
    if dq_columns is None:
        K = None
        rank_dq = 0
    else:
        ech = Bit2Echelon(cqm1_dim, budget, track=True)
        K = []
        count = 0
        for col in dq_columns:
            expr = ech.add_column(Bit2Echelon.to_bits(col), tag=count)
            count += 1
            if expr is not None:
                K.append(expr)
        rank_dq = ech.rank
    bnd = Bit2Echelon(cq_dim, budget)
    ncols = 0
    for col in boundary_columns:
        ncols += 1
        budget.check_columns(ncols, "boundary columns")
        bnd.add_column(Bit2Echelon.to_bits(col))
    dim_ker = cq_dim - rank_dq
    dim_h = dim_ker - bnd.rank
    if dim_h < 0:
        raise AssertionError("boundaries exceed cycles: not a complex")
    if not want_basis:
        return HomologySummary(degree, ring, dim_h, (), None, dim_ker)
    mini = Bit2Echelon(cq_dim)
    reps: list[dict] = []
    kernel_iter = K if K is not None else ((1 << j) for j in range(cq_dim))
    for kv in kernel_iter:
        if len(reps) == dim_h:
            break
        r, _ = bnd.reduce(kv)
        if not r:
            continue
        if mini.add_column(r, tag_bits=1 << len(reps)) is None:
            reps.append(Bit2Echelon.to_dict(kv))
    if len(reps) != dim_h:
        raise AssertionError("failed to extend boundary echelon to cycle space")
    return HomologySummary(degree, ring, dim_h, (), Bit2Basis(bnd, mini, reps), dim_ker)


def _homology_field(ring, p, degree, cq_dim, cqm1_dim, dq_columns, boundary_columns,
                    budget, want_basis):
    if dq_columns is None:
        K = None
        rank_dq = 0
    else:
        ech = FieldEchelon(cqm1_dim, p, budget, track=True)
        K = []
        count = 0
        for col in dq_columns:
            expr = ech.add_column(col, tag=count)
            count += 1
            if expr is not None:
                K.append(expr)
        rank_dq = ech.rank
    bnd = FieldEchelon(cq_dim, p, budget)
    ncols = 0
    for col in boundary_columns:
        ncols += 1
        budget.check_columns(ncols, "boundary columns")
        bnd.add_column(col)
    dim_ker = cq_dim - rank_dq
    dim_h = dim_ker - bnd.rank
    if dim_h < 0:
        raise AssertionError("boundaries exceed cycles: not a complex")
    if not want_basis:
        return HomologySummary(degree, ring, dim_h, (), None, dim_ker)
    mini = FieldEchelon(cq_dim, p)
    reps: list[dict] = []
    kernel_iter = K if K is not None else ({j: 1} for j in range(cq_dim))
    for kv in kernel_iter:
        if len(reps) == dim_h:
            break
        r = bnd.reduce(kv)
        if not r:
            continue
        if mini.add_column(r, tag_vec={len(reps): 1}) is None:
            reps.append(dict(kv))
    if len(reps) != dim_h:
        raise AssertionError("failed to extend boundary echelon to cycle space")
    return HomologySummary(degree, ring, dim_h, (), FieldBasis(p, bnd, mini, reps),
                           dim_ker)


# --------------------------------------------------------------------------
# public operations on complexes


def homology(C: ChainComplex, q: int, ring: Ring | None = None,
             budget: SizeBudget = DEFAULT_BUDGET,
             want_basis: bool = True) -> HomologySummary:
    """Homology of C in degree q over Z, Q or a prime field."""
    if ring is None:
        ring = C.ring
    if q < C.lo or q > C.hi:
        raise ValueError(f"degree {q} outside complex range {C.lo}..{C.hi}")
    dq_cols = C.differential(q).columns() if q > C.lo else None
    bnd_cols = C.differential(q + 1).columns() if q < C.hi else []
    return homology_from_streams(ring, q, C.rank(q), C.rank(q - 1) if q > C.lo else 0,
                                 dq_cols, bnd_cols, budget, want_basis)


def induced_map(f: ChainMap, q: int, ring: Ring | None = None,
                budget: SizeBudget = DEFAULT_BUDGET,
                source_summary: HomologySummary | None = None,
                target_summary: HomologySummary | None = None) -> list[list]:
    """Matrix of H_q(f) in the chosen homology bases (columns indexed by
    source generators, rows by target generators)."""
    if ring is None:
        ring = f.source.ring
    if source_summary is None:
        source_summary = homology(f.source, q, ring, budget)
    if target_summary is None:
        target_summary = homology(f.target, q, ring, budget)
    if source_summary.basis is None or target_summary.basis is None:
        raise BasesNotComputedError(f"homology bases not computed in degree {q}")
    comp = f.component(q)
    cols = []
    for rep in source_summary.basis.representatives():
        image = comp.apply(rep)
        cols.append(target_summary.basis.coords(image))
    ngen = target_summary.gens()
    return [[cols[j][i] for j in range(len(cols))] for i in range(ngen)]
