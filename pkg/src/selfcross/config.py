from __future__ import annotations

from dataclasses import asdict, dataclass

from .gauss_code import DEFAULT_MAX_CROSSINGS


@dataclass(frozen=True)
class Config:
    grid: int = 4096             # rho candidates for the half-plane search
    margin: float = 1e-6         # required strict margin delta
    joint_bound: bool = False
    polytope_budget: int = 10**6  # grid points for the joint bound
    samples: int = 10_000        # random turnings per certificate check
    seed: int = 0
    max_crossings: int = DEFAULT_MAX_CROSSINGS

    def snapshot(self) -> dict:
        return asdict(self)
