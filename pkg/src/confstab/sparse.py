"""Exact sparse matrices.

A SparseMatrix stores only nonzero entries, keyed by (row, col), with
exact coefficients: arbitrary-precision integers over Z and Q, residues
over a prime field.  No floating point anywhere.
"""

from __future__ import annotations

from .rings import Ring, ZZ


class SparseMatrix:
    """Immutable-by-convention sparse matrix over an exact ring.

    entries maps (row, col) -> nonzero coefficient.  Construction
    validates bounds and drops nothing silently: zero coefficients are
    rejected unless ``normalize=True`` asked us to canonicalize input
    (used when reducing integer data into a prime field).
    """

    __slots__ = ("nrows", "ncols", "ring", "entries")

    def __init__(self, nrows, ncols, entries=None, ring: Ring = ZZ, normalize: bool = False):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative matrix dimensions")
        self.nrows = nrows
        self.ncols = ncols
        self.ring = ring
        data = {}
        if entries:
            items = entries.items() if isinstance(entries, dict) else entries
            for key, c in items:
                i, j = key
                if not (0 <= i < nrows and 0 <= j < ncols):
                    raise ValueError(f"entry index {key} out of bounds for {nrows}x{ncols}")
                if normalize:
                    c = ring.normalize(c)
                if c == 0:
                    if normalize:
                        continue
                    raise ValueError(f"explicit zero entry at {key}")
                if key in data:
                    raise ValueError(f"duplicate entry at {key}")
                data[key] = c
        self.entries = data

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, nrows, ncols, ring: Ring = ZZ) -> "SparseMatrix":
        return cls(nrows, ncols, {}, ring)

    @classmethod
    def identity(cls, n, ring: Ring = ZZ) -> "SparseMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)}, ring)

    @classmethod
    def from_rows(cls, rows, ring: Ring = ZZ) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        ent = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, c in enumerate(row):
                c = ring.normalize(c)
                if c != 0:
                    ent[(i, j)] = c
        return cls(nrows, ncols, ent, ring)

    @classmethod
    def from_columns(cls, nrows, columns, ring: Ring = ZZ) -> "SparseMatrix":
        """columns: list of dict row->coeff."""
        ent = {}
        for j, col in enumerate(columns):
            for i, c in col.items():
                c = ring.normalize(c)
                if c != 0:
                    ent[(i, j)] = c
        return cls(nrows, len(columns), ent, ring)

    # -- accessors -------------------------------------------------------

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    def column(self, j) -> dict:
        return {i: c for (i, jj), c in self.entries.items() if jj == j}

    def columns(self) -> list[dict]:
        cols = [dict() for _ in range(self.ncols)]
        for (i, j), c in self.entries.items():
            cols[j][i] = c
        return cols

    def rows(self) -> list[list]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for (i, j), c in self.entries.items():
            out[i][j] = c
        return out

    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    # -- arithmetic ------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparseMatrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, tuple(sorted(self.entries.items()))))

    def __add__(self, other) -> "SparseMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        ent = dict(self.entries)
        ring = self.ring
        for key, c in other.entries.items():
            s = ring.normalize(ent.get(key, 0) + c)
            if s == 0:
                ent.pop(key, None)
            else:
                ent[key] = s
        return SparseMatrix(self.nrows, self.ncols, ent, ring)

    def __neg__(self) -> "SparseMatrix":
        ring = self.ring
        return SparseMatrix(
            self.nrows, self.ncols,
            {k: ring.normalize(-c) for k, c in self.entries.items()}, ring,
        )

    def __sub__(self, other) -> "SparseMatrix":
        return self + (-other)

    def scale(self, a) -> "SparseMatrix":
        ring = self.ring
        ent = {}
        for k, c in self.entries.items():
            v = ring.normalize(a * c)
            if v != 0:
                ent[k] = v
        return SparseMatrix(self.nrows, self.ncols, ent, ring)

    def __matmul__(self, other) -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in product")
        ring = self.ring
        by_row: dict[int, list] = {}
        for (i, k), c in self.entries.items():
            by_row.setdefault(k, []).append((i, c))
        ent: dict[tuple, object] = {}
        for (k, j), d in other.entries.items():
            hits = by_row.get(k)
            if not hits:
                continue
            for i, c in hits:
                key = (i, j)
                s = ent.get(key, 0) + c * d
                if s:
                    ent[key] = s
                else:
                    ent.pop(key, None)
        if ring.char:
            ent = {k: v % ring.char for k, v in ent.items()}
            ent = {k: v for k, v in ent.items() if v}
        return SparseMatrix(self.nrows, other.ncols, ent, ring)

    def apply(self, col: dict) -> dict:
        """Matrix times sparse column vector (dict index -> coeff)."""
        ring = self.ring
        out: dict[int, object] = {}
        by_col: dict[int, list] = {}
        for (i, j), c in self.entries.items():
            by_col.setdefault(j, []).append((i, c))
        for j, x in col.items():
            for i, c in by_col.get(j, ()):
                out[i] = out.get(i, 0) + c * x
        if ring.char:
            out = {i: v % ring.char for i, v in out.items()}
        return {i: v for i, v in out.items() if v}

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(
            self.ncols, self.nrows,
            {(j, i): c for (i, j), c in self.entries.items()}, self.ring,
        )

    def change_ring(self, ring: Ring) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols, dict(self.entries), ring, normalize=True)

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols} over {self.ring}, nnz={self.nnz()})"
