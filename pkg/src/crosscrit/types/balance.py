"""Harmonic position and balanced weighting models."""

from typing import Dict, List

from pydantic import Field, model_validator

from .._types import BaseModel, Edge, Rational
from .graph import IntegerWeighting


class HarmonicPositions(BaseModel):
    """Rational rubber-band positions with terminals pinned at 0 and 1."""

    s: int
    t: int
    positions: Dict[int, Rational]
    # 0 for the plain solution, k after k source-potential perturbations
    round: int = 0

    @model_validator(mode="after")
    def _check_pins(self) -> "HarmonicPositions":
        if self.positions.get(self.s) != 0 or self.positions.get(self.t) != 1:
            raise ValueError("terminals must be pinned at 0 and 1")
        for v, x in self.positions.items():
            if x < 0 or x > 1:
                raise ValueError(f"position of {v} outside [0, 1]: {x}")
        return self

    def __getitem__(self, vertex: int) -> Rational:
        return self.positions[vertex]


class BalanceReport(BaseModel):
    """Outcome of the exact balancedness check."""

    s: int
    t: int
    distance: int
    failing: List[Edge] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failing


class BalancedCertificate(BaseModel):
    """Balanced weighting with one shortest s-t witness path per edge."""

    s: int
    t: int
    weighting: IntegerWeighting
    distance: int
    witnesses: Dict[Edge, List[int]]
    round: int = 0

    @model_validator(mode="after")
    def _check_witnesses(self) -> "BalancedCertificate":
        weights = self.weighting.weights
        missing = set(weights) - set(self.witnesses)
        if missing:
            raise ValueError(f"edges without a witness path: {sorted(missing)}")
        for edge, path in self.witnesses.items():
            if path[0] != self.s or path[-1] != self.t:
                raise ValueError(f"witness for {edge} does not join the terminals")
            steps = [(min(a, b), max(a, b)) for a, b in zip(path, path[1:])]
            if edge not in steps:
                raise ValueError(f"witness for {edge} does not use it")
            if sum(weights[step] for step in steps) != self.distance:
                raise ValueError(f"witness for {edge} is not of length {self.distance}")
        return self
