"""Smith normal form over the integers, exact and sparse.

The worker keeps the matrix as dict-of-dict rows plus a column index,
pivots preferentially on +-1 entries with a lazy Markowitz heap, and can
track the row transform U together with its inverse (needed to express
homology classes in the chosen basis) and the column transform V.
Coefficients are arbitrary-precision throughout; bar-complex matrices
blow up under naive elimination otherwise.
"""

from __future__ import annotations

from heapq import heappop, heappush
from math import gcd

from .budget import SizeBudget
from .echelon import xgcd
from .sparse import SparseMatrix


class _SnfWorker:
    def __init__(self, ambient: int, columns, want_u: bool, want_v: bool,
                 budget: SizeBudget | None = None):
        self.m = ambient
        self.rows: dict[int, dict[int, int]] = {}
        self.cols: dict[int, set[int]] = {}
        self.budget = budget
        n = 0
        for j, col in enumerate(columns):
            n += 1
            for i, v in col.items():
                if v:
                    self.rows.setdefault(i, {})[j] = v
                    self.cols.setdefault(j, set()).add(i)
        self.n = n
        if budget is not None:
            budget.check_dim(max(self.m, self.n), "smith normal form dimension")
        self.u_rows = {i: {i: 1} for i in range(self.m)} if want_u else None
        self.uinv_cols = {i: {i: 1} for i in range(self.m)} if want_u else None
        self.v_cols = {j: {j: 1} for j in range(self.n)} if want_v else None
        self.heap: list[tuple[int, int, int, int]] = []
        for i, row in self.rows.items():
            for j, v in row.items():
                if v == 1 or v == -1:
                    heappush(self.heap, (len(row), i, j, 1))
        self.diag: list[int] = []
        self.done_rows: set[int] = set()
        self.done_cols: set[int] = set()

    # -- elementary operations (kept consistent with U, U^-1, V) ---------

    def _set(self, i: int, j: int, v: int) -> None:
        row = self.rows.get(i)
        if v:
            if row is None:
                row = self.rows[i] = {}
            row[j] = v
            self.cols.setdefault(j, set()).add(i)
            if v == 1 or v == -1:
                heappush(self.heap, (len(row), i, j, 1))
        else:
            if row is not None and row.pop(j, None) is not None:
                if not row:
                    del self.rows[i]
                s = self.cols.get(j)
                if s is not None:
                    s.discard(i)
                    if not s:
                        del self.cols[j]

    def _row_axpy(self, i: int, k: int, q: int) -> None:
        """row_i += q * row_k; U and U^-1 updated accordingly."""
        rowk = self.rows.get(k, {})
        for j, v in list(rowk.items()):
            self._set(i, j, self.rows.get(i, {}).get(j, 0) + q * v)
        if self.u_rows is not None:
            ui, uk = self.u_rows[i], self.u_rows[k]
            for c, v in uk.items():
                nv = ui.get(c, 0) + q * v
                if nv:
                    ui[c] = nv
                else:
                    ui.pop(c, None)
            # inverse: column k of U^-1 -= q * column i
            ci, ck = self.uinv_cols[i], self.uinv_cols[k]
            for r, v in ci.items():
                nv = ck.get(r, 0) - q * v
                if nv:
                    ck[r] = nv
                else:
                    ck.pop(r, None)

    def _col_axpy(self, j: int, k: int, q: int) -> None:
        """col_j += q * col_k; V updated accordingly."""
        for i in list(self.cols.get(k, ())):
            v = self.rows[i][k]
            self._set(i, j, self.rows.get(i, {}).get(j, 0) + q * v)
        if self.v_cols is not None:
            vj, vk = self.v_cols[j], self.v_cols[k]
            for r, v in vk.items():
                nv = vj.get(r, 0) + q * v
                if nv:
                    vj[r] = nv
                else:
                    vj.pop(r, None)

    def _row_mix(self, k: int, i: int, x: int, y: int, m2: int, n2: int) -> None:
        """[row_k, row_i] <- [[x, y], [m2, n2]] . [row_k, row_i], det 1."""
        rowk = dict(self.rows.get(k, {}))
        rowi = dict(self.rows.get(i, {}))
        for j in set(rowk) | set(rowi):
            a, b = rowk.get(j, 0), rowi.get(j, 0)
            self._set(k, j, x * a + y * b)
            self._set(i, j, m2 * a + n2 * b)
        if self.u_rows is not None:
            uk, ui = self.u_rows[k], self.u_rows[i]
            nk, ni = {}, {}
            for c in set(uk) | set(ui):
                a, b = uk.get(c, 0), ui.get(c, 0)
                va, vb = x * a + y * b, m2 * a + n2 * b
                if va:
                    nk[c] = va
                if vb:
                    ni[c] = vb
            self.u_rows[k], self.u_rows[i] = nk, ni
            # U^-1 . E^-1 with E^-1 = [[n2, -y], [-m2, x]]
            ck, ci = self.uinv_cols[k], self.uinv_cols[i]
            nck, nci = {}, {}
            for r in set(ck) | set(ci):
                a, b = ck.get(r, 0), ci.get(r, 0)
                va, vb = n2 * a - m2 * b, -y * a + x * b
                if va:
                    nck[r] = va
                if vb:
                    nci[r] = vb
            self.uinv_cols[k], self.uinv_cols[i] = nck, nci

    def _col_mix(self, k: int, j: int, x: int, y: int, m2: int, n2: int) -> None:
        """[col_k, col_j] <- [col_k, col_j] . [[x, m2], [y, n2]]^T style mix, det 1."""
        colk = {i: self.rows[i][k] for i in self.cols.get(k, set()).copy()}
        colj = {i: self.rows[i][j] for i in self.cols.get(j, set()).copy()}
        for i in set(colk) | set(colj):
            a, b = colk.get(i, 0), colj.get(i, 0)
            self._set(i, k, x * a + y * b)
            self._set(i, j, m2 * a + n2 * b)
        if self.v_cols is not None:
            vk, vj = self.v_cols[k], self.v_cols[j]
            nk, nj = {}, {}
            for r in set(vk) | set(vj):
                a, b = vk.get(r, 0), vj.get(r, 0)
                va, vb = x * a + y * b, m2 * a + n2 * b
                if va:
                    nk[r] = va
                if vb:
                    nj[r] = vb
            self.v_cols[k], self.v_cols[j] = nk, nj

    # -- pivoting ---------------------------------------------------------

    def _find_pivot(self):
        # lazy heap of +-1 candidates
        heap = self.heap
        while heap:
            est, i, j, _ = heappop(heap)
            row = self.rows.get(i)
            if row is None or i in self.done_rows or j in self.done_cols:
                continue
            v = row.get(j, 0)
            if v != 1 and v != -1:
                continue
            cur = len(row)
            if cur > est and heap and heap[0][0] < cur:
                heappush(heap, (cur, i, j, 1))
                continue
            return i, j
        # fall back: smallest absolute value, then sparsest row, then index
        best = None
        for i, row in self.rows.items():
            if i in self.done_rows:
                continue
            for j, v in row.items():
                if j in self.done_cols:
                    continue
                key = (abs(v), len(row), i, j)
                if best is None or key < best:
                    best = key
        if best is None:
            return None
        return best[2], best[3]

    def _clear_pivot(self, i0: int, j0: int) -> None:
        """Make (i0, j0) the only nonzero in its row and column."""
        while True:
            a = self.rows[i0][j0]
            dirty = False
            for i in list(self.cols.get(j0, ())):
                if i == i0:
                    continue
                b = self.rows[i][j0]
                if b % a == 0:
                    self._row_axpy(i, i0, -(b // a))
                else:
                    g, x, y = xgcd(a, b)
                    self._row_mix(i0, i, x, y, -(b // g), a // g)
                    a = g
            for j in list(self.rows.get(i0, {}).keys()):
                if j == j0:
                    continue
                b = self.rows[i0][j]
                if b % a == 0:
                    self._col_axpy(j, j0, -(b // a))
                else:
                    g, x, y = xgcd(a, b)
                    self._col_mix(j0, j, x, y, -(b // g), a // g)
                    a = g
                    dirty = True
            if not dirty and len(self.cols.get(j0, set())) == 1:
                break

    def run(self) -> None:
        while True:
            piv = self._find_pivot()
            if piv is None:
                break
            i0, j0 = piv
            self._clear_pivot(i0, j0)
            a = self.rows[i0][j0]
            if a < 0:
                # negate the row to keep diagonal entries nonnegative
                self._set(i0, j0, -a)
                a = -a
                if self.u_rows is not None:
                    self.u_rows[i0] = {c: -v for c, v in self.u_rows[i0].items()}
                    self.uinv_cols[i0] = {r: -v for r, v in self.uinv_cols[i0].items()}
            self.done_rows.add(i0)
            self.done_cols.add(j0)
            self.diag.append((i0, j0, a))
            if self.budget is not None and len(self.diag) % 64 == 0:
                total = sum(len(r) for r in self.rows.values())
                self.budget.check_entries(total, "smith normal form fill-in")

    def _negate_row(self, i: int, j: int) -> None:
        self._set(i, j, -self.rows[i][j])
        if self.u_rows is not None:
            self.u_rows[i] = {c: -w for c, w in self.u_rows[i].items()}
            self.uinv_cols[i] = {r: -w for r, w in self.uinv_cols[i].items()}

    def fix_divisibility(self) -> None:
        """Enforce d_1 | d_2 | ... on the recorded pivots with transforms."""
        changed = True
        while changed:
            changed = False
            for t in range(len(self.diag) - 1):
                i1, j1, d1 = self.diag[t]
                i2, j2, d2 = self.diag[t + 1]
                if d1 == 0 and d2 != 0:
                    # zeros sort last
                    self.diag[t], self.diag[t + 1] = (i2, j2, d2), (i1, j1, d1)
                    changed = True
                    continue
                if d1 == 0 or d2 % d1 == 0:
                    continue
                # classic 2x2 repair: fold col j1 into col j2 giving
                # [[d1, d1], [0, d2]], mix rows so gcd appears at (i1, j2),
                # then clear; the lcm lands at (i2, j1).
                self._col_axpy(j2, j1, 1)
                g, x, y = xgcd(d1, d2)
                self._row_mix(i1, i2, x, y, -(d2 // g), d1 // g)
                self._clear_pivot(i1, j2)
                if self.rows[i1][j2] < 0:
                    self._negate_row(i1, j2)
                if self.rows[i2][j1] < 0:
                    self._negate_row(i2, j1)
                nd1 = self.rows[i1][j2]
                nd2 = self.rows[i2][j1]
                if nd2 % nd1 != 0:
                    raise AssertionError("divisibility repair failed")
                self.diag[t] = (i1, j2, nd1)
                self.diag[t + 1] = (i2, j1, nd2)
                changed = True


def _normalize_factor_chain(values: list[int]) -> list[int]:
    """Divisibility chain of the multiset of diagonal values (no transforms)."""
    vals = [abs(v) for v in values]
    changed = True
    while changed:
        changed = False
        for a in range(len(vals)):
            for b in range(a + 1, len(vals)):
                if vals[a] == 0 or (vals[b] % vals[a] == 0):
                    continue
                g = gcd(vals[a], vals[b])
                l = 0 if g == 0 else vals[a] // g * vals[b]
                vals[a], vals[b] = g, l
                changed = True
    return vals


def invariant_factors_of_columns(columns, ambient: int,
                                 budget: SizeBudget | None = None) -> list[int]:
    """Invariant factors (full chain, including 1s) of the integer matrix
    whose columns are given; no transforms tracked."""
    w = _SnfWorker(ambient, columns, want_u=False, want_v=False, budget=budget)
    w.run()
    return _normalize_factor_chain([d for (_, _, d) in w.diag])


def snf_with_row_transform(columns, ambient: int, budget: SizeBudget | None = None):
    """Diagonalize with only the row transform tracked.

    Returns (factors, row_order, U_rows, Uinv_cols) where factors is the
    divisibility chain d_1 | d_2 | ..., and U (as rows, over the ambient
    row space) satisfies: U . matrix . V = diag(factors) for some
    unimodular V, with row_order giving, for each factor position, the
    U-row index carrying it.  Uinv_cols are the columns of U^{-1}.
    """
    w = _SnfWorker(ambient, columns, want_u=True, want_v=False, budget=budget)
    w.run()
    w.fix_divisibility()
    factors = [d for (_, _, d) in w.diag]
    row_order = [i for (i, _, _) in w.diag]
    return factors, row_order, w.u_rows, w.uinv_cols


def smith_normal_form(M: SparseMatrix, budget: SizeBudget | None = None):
    """Full Smith normal form with unimodular transforms.

    Returns (D, U, V) with U @ M @ V == D, diagonal entries nonnegative
    and each dividing the next.  U and V are products of elementary
    integer operations, hence have determinant +-1.
    """
    if M.ring.char or M.ring.is_field:
        raise ValueError("smith_normal_form requires integer coefficients")
    if budget is not None:
        budget.check_dim(max(M.nrows, M.ncols), "smith normal form dimension")
    if _already_smith(M):
        return M, SparseMatrix.identity(M.nrows), SparseMatrix.identity(M.ncols)
    w = _SnfWorker(M.nrows, M.columns(), want_u=True, want_v=True, budget=budget)
    w.run()
    w.fix_divisibility()
    # permute rows/cols so factor t sits at (t, t)
    diag = w.diag
    full_row: list = [None] * M.nrows
    for t, (i, _, _) in enumerate(diag):
        full_row[i] = t
    _assign_remaining(full_row, M.nrows, len(diag))
    full_col: list = [None] * M.ncols
    for t, (_, j, _) in enumerate(diag):
        full_col[j] = t
    _assign_remaining(full_col, M.ncols, len(diag))

    d_entries = {}
    for t, (_, _, d) in enumerate(diag):
        if d:
            d_entries[(t, t)] = d
    D = SparseMatrix(M.nrows, M.ncols, d_entries)
    u_entries = {}
    for i, row in w.u_rows.items():
        for c, v in row.items():
            u_entries[(full_row[i], c)] = v
    U = SparseMatrix(M.nrows, M.nrows, u_entries)
    v_entries = {}
    for j, col in w.v_cols.items():
        for r, v in col.items():
            v_entries[(r, full_col[j])] = v
    V = SparseMatrix(M.ncols, M.ncols, v_entries)
    return D, U, V


def _assign_remaining(perm: list, n: int, start: int) -> None:
    nxt = start
    for i in range(n):
        if perm[i] is None:
            perm[i] = nxt
            nxt += 1


def _already_smith(M: SparseMatrix) -> bool:
    prev = None
    for (i, j), v in M.entries.items():
        if i != j or v < 0:
            return False
    for t in range(min(M.nrows, M.ncols)):
        v = M[(t, t)]
        if prev is not None:
            if prev == 0 and v != 0:
                return False
            if prev != 0 and v % prev != 0:
                return False
        prev = v
    return True
