"""Run configuration for verification campaigns."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .budget import SizeBudget
from .rings import Ring, ring_by_name


@dataclass(frozen=True)
class RunConfig:
    """Everything a campaign needs: coefficients, budgets, cell ranges,
    output destination, and parallelism width."""

    ring: str = "auto"                # Z | Q | F<p> | auto
    max_dim: int = 200_000
    max_columns: int = 4_000_000
    max_entries: int = 60_000_000
    jobs: int = 1
    out_format: str = "json"          # json | csv
    out_path: str | None = None
    # cell ranges (used per subcommand)
    n_max: int = 4
    q_max: int = 1
    m: int | None = None
    r: int | None = None
    r_max: int | None = None
    d: int | None = None
    k: int | None = None
    k_max: int | None = None
    l_max: int | None = None

    def validate(self) -> None:
        if self.ring != "auto":
            ring_by_name(self.ring)  # raises on junk / non-prime p
        for name in ("max_dim", "max_columns", "max_entries", "jobs"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.out_format not in ("json", "csv"):
            raise ValueError(f"unknown output format {self.out_format!r}")
        if self.n_max < 1:
            raise ValueError("n_max must be at least 1")
        if self.q_max < 0:
            raise ValueError("q_max must be nonnegative")

    def budget(self) -> SizeBudget:
        return SizeBudget(self.max_dim, self.max_columns, self.max_entries)

    def resolve_ring(self) -> Ring | str:
        return "auto" if self.ring == "auto" else ring_by_name(self.ring)

    def as_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}
