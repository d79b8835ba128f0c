"""Coefficient rings: the integers, the rationals, and prime fields.

Ring objects are small immutable tags with just enough element arithmetic
for the elimination engines.  Integer and rational work is done on Python
ints (matrices of geometric origin here are always integral; rational
ranks equal integer lattice ranks), prime-field work on ints reduced
mod p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Ring:
    """A coefficient ring: ``Z``, ``Q`` or ``GF(p)``.

    ``char`` is 0 for Z and Q; ``is_field`` distinguishes Z from Q.
    """

    name: str
    char: int
    is_field: bool

    def normalize(self, x):
        """Canonical representative of x (reduces mod p over a prime field)."""
        if self.char:
            return x % self.char
        return x

    def inv(self, x):
        if self.char:
            return pow(x, -1, self.char)
        if self.is_field:
            return Fraction(1, 1) / Fraction(x)
        raise ZeroDivisionError("no inverses over the integers")

    def __str__(self) -> str:
        return self.name


ZZ = Ring("Z", 0, False)
QQ = Ring("Q", 0, True)

_GF_CACHE: dict[int, Ring] = {}


def GF(p: int) -> Ring:
    if p not in _GF_CACHE:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        _GF_CACHE[p] = Ring(f"F{p}", p, True)
    return _GF_CACHE[p]


def ring_by_name(name: str) -> Ring:
    """Parse a ring name as used by the CLI: Z, Q, F2, F3, ..."""
    name = name.strip()
    if name in ("Z", "ZZ"):
        return ZZ
    if name in ("Q", "QQ"):
        return QQ
    if name.startswith("F") and name[1:].isdigit():
        return GF(int(name[1:]))
    raise ValueError(f"unknown coefficient ring {name!r} (expected Z, Q or F<p>)")
