"""Evolving arc states under the discrete walk and under its continuous factors."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arcs import ArcSpace
from .errors import ValidationError
from .factorizer import FactorizationResult, GroverWalk
from .linalg import expm_skew


@dataclass(frozen=True, eq=False)
class ArcState:
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size == 0:
            raise ValidationError("arc state must be a non-empty vector")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> ArcState:
        nrm = self.norm
        if nrm == 0.0:
            raise ValidationError("cannot normalize the zero state")
        return ArcState(self.amplitudes / nrm)

    @classmethod
    def basis(cls, space: ArcSpace, arc: int | tuple[int, int]) -> ArcState:
        idx = arc if isinstance(arc, (int, np.integer)) else space.index(arc)
        if not 0 <= idx < space.size:
            raise ValidationError(f"arc index {idx} outside 0..{space.size - 1}")
        amps = np.zeros(space.size, dtype=complex)
        amps[idx] = 1.0
        return cls(amps)

    @classmethod
    def uniform(cls, space: ArcSpace) -> ArcState:
        return cls(np.full(space.size, 1.0 / np.sqrt(space.size), dtype=complex))


def discrete_evolve(W: GroverWalk, psi: ArcState, steps: int) -> ArcState:
    if steps < 0:
        raise ValidationError("steps must be non-negative")
    v = psi.amplitudes
    for _ in range(steps):
        v = W.U @ v
    return ArcState(v)


def continuous_evolve(res: FactorizationResult, psi: ArcState, m: int) -> ArcState:
    """Apply ``prod_i exp(m t_i S(Y_i))``; the factors commute, so time scales by m."""
    if m < 0:
        raise ValidationError("m must be non-negative")
    v = psi.amplitudes
    if m == 0:
        return ArcState(v)
    for S, t in zip(res.skews, res.t):
        v = expm_skew(S, m * t) @ v
    return ArcState(v)


def compare_evolutions(W: GroverWalk, res: FactorizationResult, psi: ArcState, m: int) -> float:
    """``||U^{2m} psi - continuous_evolve(res, psi, m)||_2``."""
    a = discrete_evolve(W, psi, 2 * m).amplitudes
    b = continuous_evolve(res, psi, m).amplitudes
    return float(np.linalg.norm(a - b))
