"""Streaming exact elimination engines.

Three engines with one shape: columns are fed in one at a time, each is
reduced against the pivot rows accumulated so far, and either vanishes
(optionally emitting the combination that killed it, i.e. a kernel
vector) or becomes a new pivot row.

* IntEchelon    -- integer lattices, xgcd pivoting (Smith-free rank,
                   image lattices, integer kernels).
* FieldEchelon  -- GF(p) and Q (Fraction) with dict-sparse rows.
* Bit2Echelon   -- GF(2) with rows packed into Python int bitmasks;
                   this is what makes the largest bar-complex cells
                   tractable.

Pivots are always the smallest-index nonzero coordinate, so echelons,
kernels and all downstream bases are deterministic functions of the
column order.
"""

from __future__ import annotations

from fractions import Fraction
from heapq import heapify, heappop, heappush

from .budget import BudgetExceededError, SizeBudget


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) = x*a + y*b, g >= 0."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


class IntEchelon:
    """Incremental row echelon of an integer lattice in Z^ambient.

    Rows are sparse dicts col->int, one pivot column per row; a column
    that reduces to zero certifies membership of the span so far.  With
    ``track=True`` each inserted column j carries the expression of the
    current row in terms of original columns, and ``add_column`` returns
    the kernel combination when a column dies; the emitted expressions
    form a basis of the kernel lattice of the streamed matrix.
    """

    def __init__(self, ambient: int, budget: SizeBudget | None = None, track: bool = False):
        self.ambient = ambient
        self.budget = budget
        self.track = track
        self.rows: dict[int, dict[int, int]] = {}   # pivot col -> row
        self.exprs: dict[int, dict[int, int]] = {}  # pivot col -> expression
        self.rank = 0
        self.nnz = 0
        self._fed = 0

    def add_column(self, vec: dict[int, int], tag: int | None = None):
        """Feed one column; returns the kernel expression dict if the
        column reduced to zero (empty dict when not tracking), else None
        (a new pivot row was created)."""
        if tag is None:
            tag = self._fed
        self._fed += 1
        vec = dict(vec)
        expr = {tag: 1} if self.track else None
        rows = self.rows
        heap = list(vec.keys())
        heapify(heap)
        seen_stale = vec
        while heap:
            j = heappop(heap)
            b = seen_stale.get(j, 0)
            if b == 0:
                seen_stale.pop(j, None)
                continue
            row = rows.get(j)
            if row is None:
                # new pivot; normalize sign so the pivot is positive
                if b < 0:
                    vecrow = {c: -v for c, v in seen_stale.items() if v}
                    if expr is not None:
                        expr = {c: -v for c, v in expr.items()}
                else:
                    vecrow = {c: v for c, v in seen_stale.items() if v}
                rows[j] = vecrow
                if expr is not None:
                    self.exprs[j] = expr
                self.rank += 1
                self.nnz += len(vecrow)
                if self.budget is not None:
                    self.budget.check_entries(self.nnz, "integer echelon entries")
                return None
            a = row[j]
            if b % a == 0:
                q = b // a
                self._axpy(seen_stale, row, -q, heap)
                if expr is not None and self.track:
                    rexpr = self.exprs[j]
                    for c, v in rexpr.items():
                        nv = expr.get(c, 0) - q * v
                        if nv:
                            expr[c] = nv
                        else:
                            expr.pop(c, None)
            else:
                # xgcd mix: row becomes the gcd row, column continues
                g, x, y = xgcd(a, b)
                mbg, ag = -(b // g), a // g
                self.nnz -= len(row)
                new_row = {}
                for c in set(row) | set(seen_stale):
                    ra, vb = row.get(c, 0), seen_stale.get(c, 0)
                    nr = x * ra + y * vb
                    nv = mbg * ra + ag * vb
                    if nr:
                        new_row[c] = nr
                    if nv != vb:
                        if nv:
                            if c not in seen_stale:
                                heappush(heap, c)
                            seen_stale[c] = nv
                        else:
                            seen_stale.pop(c, None)
                rows[j] = new_row
                self.nnz += len(new_row)
                if self.track:
                    rexpr = self.exprs[j]
                    vexpr = expr
                    new_rexpr = {}
                    for c in set(rexpr) | set(vexpr):
                        ra, vb = rexpr.get(c, 0), vexpr.get(c, 0)
                        nr = x * ra + y * vb
                        nv = mbg * ra + ag * vb
                        if nr:
                            new_rexpr[c] = nr
                        if nv:
                            vexpr[c] = nv
                        else:
                            vexpr.pop(c, None)
                    self.exprs[j] = new_rexpr
                if self.budget is not None:
                    self.budget.check_entries(self.nnz, "integer echelon entries")
        return expr if expr is not None else {}

    @staticmethod
    def _axpy(vec: dict, row: dict, coef: int, heap: list) -> None:
        for c, v in row.items():
            nv = vec.get(c, 0) + coef * v
            if nv:
                if c not in vec:
                    heappush(heap, c)
                vec[c] = nv
            else:
                vec.pop(c, None)

    def contains(self, vec: dict[int, int]) -> bool:
        """Exact lattice membership (does not modify the echelon)."""
        vec = dict(vec)
        heap = list(vec.keys())
        heapify(heap)
        while heap:
            j = heappop(heap)
            b = vec.get(j, 0)
            if b == 0:
                continue
            row = self.rows.get(j)
            if row is None or b % row[j] != 0:
                return False
            self._axpy(vec, row, -(b // row[j]), heap)
        return not any(vec.values())

    def basis_rows(self) -> list[dict[int, int]]:
        return [self.rows[j] for j in sorted(self.rows)]


class FieldEchelon:
    """Incremental reduced echelon over GF(p) (p odd prime) or Q.

    ``p=None`` means Q with Fraction arithmetic.  Rows are dict-sparse
    and pivot-normalized to 1.  Supports kernel tracking like IntEchelon
    and non-destructive reduction with tag collection (used to read off
    homology-class coordinates).
    """

    def __init__(self, ambient: int, p: int | None, budget: SizeBudget | None = None,
                 track: bool = False):
        self.ambient = ambient
        self.p = p
        self.budget = budget
        self.track = track
        self.rows: dict[int, dict] = {}
        self.exprs: dict[int, dict] = {}
        self.tags: dict[int, dict] = {}
        self.rank = 0
        self.nnz = 0
        self._fed = 0

    def _inv(self, a):
        if self.p is not None:
            return pow(a, -1, self.p)
        return Fraction(1) / Fraction(a)

    def add_column(self, vec: dict, tag_vec: dict | None = None, tag: int | None = None):
        """Feed a column; returns kernel expression dict if it died, else
        None.  ``tag_vec`` attaches an arbitrary coefficient tag to the
        created pivot row (used for homology-coordinate readout)."""
        p = self.p
        if tag is None:
            tag = self._fed
        self._fed += 1
        if p is not None:
            vec = {c: v % p for c, v in vec.items() if v % p}
        else:
            vec = {c: v for c, v in vec.items() if v}
        expr = {tag: 1} if self.track else None
        tags = dict(tag_vec) if tag_vec is not None else None
        heap = list(vec.keys())
        heapify(heap)
        while heap:
            j = heappop(heap)
            b = vec.get(j, 0)
            if b == 0:
                continue
            row = self.rows.get(j)
            if row is None:
                binv = self._inv(b)
                if p is not None:
                    newrow = {c: (v * binv) % p for c, v in vec.items()}
                else:
                    newrow = {c: v * binv for c, v in vec.items()}
                self.rows[j] = newrow
                if expr is not None:
                    self.exprs[j] = {c: (v * binv) % p if p is not None else v * binv
                                     for c, v in expr.items()}
                if tags is not None:
                    self.tags[j] = {c: (v * binv) % p if p is not None else v * binv
                                    for c, v in tags.items()}
                self.rank += 1
                self.nnz += len(newrow)
                if self.budget is not None:
                    self.budget.check_entries(self.nnz, "field echelon entries")
                return None
            self._eliminate(vec, row, b, heap)
            if expr is not None and j in self.exprs:
                self._combine(expr, self.exprs[j], b)
            if tags is not None and j in self.tags:
                self._combine(tags, self.tags[j], b)
        return expr if expr is not None else {}

    def _eliminate(self, vec, row, b, heap):
        p = self.p
        for c, v in row.items():
            nv = vec.get(c, 0) - b * v
            if p is not None:
                nv %= p
            if nv:
                if c not in vec:
                    heappush(heap, c)
                vec[c] = nv
            else:
                vec.pop(c, None)

    def _combine(self, acc, rowd, b):
        p = self.p
        for c, v in rowd.items():
            nv = acc.get(c, 0) - b * v
            if p is not None:
                nv %= p
            if nv:
                acc[c] = nv
            else:
                acc.pop(c, None)

    def reduce(self, vec: dict, collect_tags: dict | None = None) -> dict:
        """Reduce without inserting; optionally accumulate row tags."""
        p = self.p
        if p is not None:
            vec = {c: v % p for c, v in vec.items() if v % p}
        else:
            vec = {c: v for c, v in vec.items() if v}
        heap = list(vec.keys())
        heapify(heap)
        out = {}
        while heap:
            j = heappop(heap)
            b = vec.get(j, 0)
            if b == 0:
                continue
            row = self.rows.get(j)
            if row is None:
                out[j] = b
                vec.pop(j)
                continue
            self._eliminate(vec, row, b, heap)
            if collect_tags is not None and j in self.tags:
                self._combine(collect_tags, self.tags[j], b)
        return out


class Bit2Echelon:
    """Incremental echelon over GF(2) with int-bitmask rows.

    A vector over GF(2) in an ambient space of dimension d is a Python
    int with bit j = coordinate j.  Reduction pivots on the lowest set
    bit; big-int XOR keeps the inner loop at C speed.
    """

    def __init__(self, ambient: int, budget: SizeBudget | None = None, track: bool = False):
        self.ambient = ambient
        self.budget = budget
        self.track = track
        self.rows: dict[int, int] = {}
        self.exprs: dict[int, int] = {}
        self.tags: dict[int, int] = {}
        self.rank = 0
        self._fed = 0

    @staticmethod
    def to_bits(vec: dict) -> int:
        v = 0
        for c, a in vec.items():
            if a % 2:
                v |= 1 << c
        return v

    @staticmethod
    def to_dict(bits: int) -> dict:
        out = {}
        while bits:
            lsb = bits & -bits
            out[lsb.bit_length() - 1] = 1
            bits ^= lsb
        return out

    def add_column(self, v: int, tag_bits: int = 0, tag: int | None = None):
        """Feed a bit-vector; returns the kernel bitmask (over fed-column
        indices) if it died, else None."""
        if tag is None:
            tag = self._fed
        self._fed += 1
        expr = (1 << tag) if self.track else None
        tags = tag_bits
        rows = self.rows
        exprs = self.exprs
        tagrows = self.tags
        while v:
            lsb = v & -v
            j = lsb.bit_length() - 1
            row = rows.get(j)
            if row is None:
                rows[j] = v
                if expr is not None:
                    exprs[j] = expr
                if tags:
                    tagrows[j] = tags
                self.rank += 1
                return None
            v ^= row
            if expr is not None:
                e = exprs.get(j)
                if e is not None:
                    expr ^= e
            if j in tagrows:
                tags ^= tagrows[j]
        return expr if expr is not None else 0

    def reduce(self, v: int) -> tuple[int, int]:
        """Reduce without inserting; returns (remainder, collected tags)."""
        rows = self.rows
        tagrows = self.tags
        tags = 0
        out = 0
        while v:
            lsb = v & -v
            j = lsb.bit_length() - 1
            row = rows.get(j)
            if row is None:
                out |= lsb
                v ^= lsb
                continue
            v ^= row
            if j in tagrows:
                tags ^= tagrows[j]
        return out, tags
