"""
FrogLab
Experiment Config v0.3.0
20260923

Typed experiment configuration built from a validated experiment file.
"""

from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from froglab.core.frogcore import DEFAULT_HORIZON_CAP
from froglab.utils.lattice import MAX_DIMENSION, direction_vector

ExperimentKind = Literal[
    "sim", "scaling", "perc", "tails", "fm", "paths", "weighted", "indicators"
]

BATTERY = (
    "engine_oracle",
    "genealogy",
    "subadditivity",
    "monotonicity_locality",
    "t2_reduction",
    "resample_coupling",
    "percolation",
    "parity",
)

DEFAULT_VERIFY_COUNTS: Dict[str, int] = {
    "engine_oracle": 200,
    "genealogy": 10000,
    "subadditivity": 10000,
    "monotonicity_locality": 1000,
    "t2_reduction": 100,
    "resample_coupling": 1000,
    "percolation": 1000,
    "exhaustive": 100,
    "parity": 1000,
}


class ExperimentConfig(BaseModel):
    """
    Everything that determines the bytes of a run, except the manifest
    timestamps. workers affects speed only.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    master_seed: int = Field(ge=0, lt=2 ** 64)
    d: int = Field(default=2, ge=1, le=MAX_DIMENSION)
    kind: Optional[ExperimentKind] = None
    output: str = "results"
    workers: int = Field(default=1, ge=1)
    horizon_cap: int = Field(default=DEFAULT_HORIZON_CAP, ge=1)
    resamples: int = Field(default=1000, ge=10)

    n_grid: List[int] = Field(default_factory=list)
    direction: str = "e1"
    replicas: int = Field(default=10, ge=1)
    dims: List[int] = Field(default_factory=list)
    tail_factors: List[float] = Field(default_factory=lambda: [1.0, 1.25, 1.5, 2.0, 3.0])

    L_grid: List[int] = Field(default_factory=list)
    M_grid: List[int] = Field(default_factory=list)
    p_grid: List[float] = Field(default_factory=list)
    instances: int = Field(default=10, ge=1)

    battery: List[str] = Field(default_factory=lambda: list(BATTERY))
    corrupt_key: bool = False
    verify_counts: Dict[str, int] = Field(default_factory=lambda: dict(DEFAULT_VERIFY_COUNTS))

    @field_validator("n_grid", "L_grid")
    @classmethod
    def _positive_grid(cls, values: List[int]) -> List[int]:
        if any(v < 1 for v in values):
            raise ValueError("grid values must be >= 1")
        return values

    @field_validator("M_grid")
    @classmethod
    def _m_grid(cls, values: List[int]) -> List[int]:
        if any(v < 1 for v in values):
            raise ValueError("M values must be >= 1")
        return values

    @field_validator("p_grid")
    @classmethod
    def _probabilities(cls, values: List[float]) -> List[float]:
        if any(not 0.0 <= v <= 1.0 for v in values):
            raise ValueError("p values must lie in [0, 1]")
        return values

    @field_validator("dims")
    @classmethod
    def _dims(cls, values: List[int]) -> List[int]:
        if any(not 1 <= v <= MAX_DIMENSION for v in values):
            raise ValueError(f"dims must lie in 1..{MAX_DIMENSION}")
        return values

    @field_validator("battery")
    @classmethod
    def _battery(cls, values: List[str]) -> List[str]:
        unknown = [v for v in values if v not in BATTERY]
        if unknown:
            raise ValueError(f"unknown battery checks: {', '.join(unknown)}")
        return values

    @model_validator(mode="after")
    def _direction_fits(self) -> "ExperimentConfig":
        for d in self.dimensions:
            direction_vector(self.direction, d)
        return self

    @property
    def dimensions(self) -> List[int]:
        """Dimensions swept by the run (dims if given, else d)."""
        return list(self.dims) if self.dims else [self.d]

    def count(self, check: str) -> int:
        return self.verify_counts.get(check, DEFAULT_VERIFY_COUNTS.get(check, 1))

    def echo(self) -> Dict:
        """JSON-ready copy for the manifest, without the worker count."""
        data = self.model_dump()
        data.pop("workers")
        return data
