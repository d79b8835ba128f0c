"""Symmetric groups with explicit element enumeration.

Permutations of {0, ..., n-1} are tuples of images; the elements of
S_n are enumerated in lexicographic order, which puts the identity at
index 0.  Only what the bar-resolution machinery needs is here:
composition, inverses, adjacent-transposition (Coxeter) generators, a
two-element generating set used to span boundary images, and the
standard inclusion S_n -> S_{n+1}.
"""

from __future__ import annotations

from itertools import permutations
from math import factorial


class PermGroup:
    def __init__(self, n: int):
        if n < 0:
            raise ValueError("n must be nonnegative")
        self.n = n
        self.elements: list[tuple[int, ...]] = sorted(permutations(range(n)))
        self.index: dict[tuple[int, ...], int] = {g: i for i, g in enumerate(self.elements)}
        self.identity: tuple[int, ...] = tuple(range(n))
        self.order = factorial(n)
        self._inv: list[int] | None = None

    def compose(self, g: tuple[int, ...], h: tuple[int, ...]) -> tuple[int, ...]:
        """g after h: (g h)(k) = g(h(k))."""
        return tuple(g[h[k]] for k in range(self.n))

    def inverse(self, g: tuple[int, ...]) -> tuple[int, ...]:
        inv = [0] * self.n
        for k, v in enumerate(g):
            inv[v] = k
        return tuple(inv)

    def inverse_index(self, i: int) -> int:
        if self._inv is None:
            self._inv = [self.index[self.inverse(g)] for g in self.elements]
        return self._inv[i]

    def transposition(self, a: int, b: int) -> tuple[int, ...]:
        g = list(range(self.n))
        g[a], g[b] = g[b], g[a]
        return tuple(g)

    def coxeter_gens(self) -> list[tuple[int, ...]]:
        """Adjacent transpositions s_i = (i, i+1)."""
        return [self.transposition(i, i + 1) for i in range(self.n - 1)]

    def span_gens(self) -> list[tuple[int, ...]]:
        """A small generating set: (0 1) and the n-cycle (enough to span
        bar-boundary images; any generating set works)."""
        if self.n < 2:
            return []
        if self.n == 2:
            return [self.transposition(0, 1)]
        cycle = tuple((k + 1) % self.n for k in range(self.n))
        return [self.transposition(0, 1), cycle]

    def sign(self, g: tuple[int, ...]) -> int:
        seen = [False] * self.n
        sgn = 1
        for k in range(self.n):
            if seen[k]:
                continue
            length = 0
            j = k
            while not seen[j]:
                seen[j] = True
                j = g[j]
                length += 1
            if length % 2 == 0:
                sgn = -sgn
        return sgn

    def word_in_coxeter_gens(self, g: tuple[int, ...]) -> list[int]:
        """Adjacent-transposition word for g, via bubble sort.

        Returns [w_1, ..., w_k] with g = s_{w_k} o ... o s_{w_1}; so a
        homomorphism rho satisfies rho(g) = rho(s_{w_k}) ... rho(s_{w_1}),
        obtained by left-multiplying in word order.
        """
        arr = list(g)
        word: list[int] = []
        changed = True
        while changed:
            changed = False
            for i in range(self.n - 1):
                if arr[i] > arr[i + 1]:
                    arr[i], arr[i + 1] = arr[i + 1], arr[i]
                    word.append(i)
                    changed = True
        return word

    def include(self, g: tuple[int, ...], N: int) -> tuple[int, ...]:
        """Standard inclusion fixing the new points n, ..., N-1."""
        if N < self.n:
            raise ValueError("cannot include into a smaller group")
        return tuple(g) + tuple(range(self.n, N))

    def __repr__(self) -> str:
        return f"PermGroup({self.n})"
