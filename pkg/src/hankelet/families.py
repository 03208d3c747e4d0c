"""Built-in test functions with closed-form Hankel transforms."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .radial import RadialFunction
from .special import gaussian_moment_transform

FAMILIES = ("gaussian", "poly_gaussian", "zero")


@dataclass(frozen=True)
class FunctionSpec:
    """x^(2 degree) exp(-x^2 / (2 width^2)); degree 0 is the plain Gaussian."""

    family: str
    width: float = 1.0
    degree: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigError(f"unknown function family {self.family!r}; known: {', '.join(FAMILIES)}")
        if not (self.width > 0 and math.isfinite(self.width)):
            raise ConfigError(f"width must be positive, got {self.width}")
        if self.degree < 0 or int(self.degree) != self.degree:
            raise ConfigError(f"degree must be a non-negative integer, got {self.degree}")
        if self.family == "gaussian" and self.degree:
            raise ConfigError("the gaussian family has no degree; use poly_gaussian")

    @property
    def label(self):
        if self.family == "gaussian":
            return f"gaussian(width={self.width:g})"
        if self.family == "poly_gaussian":
            return f"poly_gaussian(degree={self.degree},width={self.width:g})"
        return "zero"

    def rule(self):
        if self.family == "zero":
            return lambda r: np.zeros_like(np.asarray(r, dtype=float))
        m, w = int(self.degree), float(self.width)
        return lambda r: np.asarray(r, dtype=float) ** (2 * m) * np.exp(-0.5 * (np.asarray(r, dtype=float) / w) ** 2)

    def transform_rule(self, alpha):
        """Exact Hankel transform of the function."""
        if self.family == "zero":
            return lambda r: np.zeros_like(np.asarray(r, dtype=float))
        m, w = int(self.degree), float(self.width)
        return lambda r: gaussian_moment_transform(alpha, 2 * m, w, r)

    def sample(self, grid):
        return RadialFunction.from_rule(grid, self.rule(), self.label)
