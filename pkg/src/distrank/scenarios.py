"""Two-sample multivariate location/scale scenarios and their samplers.

A scenario fixes the dimension, the group sizes and the second sample's
parameters; the first sample always comes from the standard member of the
family (standard normal, or standard independent-coordinate Cauchy).
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .rng import RngSeed, as_seed

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

__all__ = [
    "NORMAL",
    "CAUCHY",
    "CAUCHY_ISOTROPIC",
    "MultivariateScenario",
    "sample_scenario",
    "write_samples",
]

NORMAL = "normal"
CAUCHY = "cauchy"
CAUCHY_ISOTROPIC = "cauchy-isotropic"


@dataclass(frozen=True)
class MultivariateScenario:
    """Sampling scenario for one experiment cell.

    ``family`` is ``"normal"`` (second sample ~ N(shift, covariance)),
    ``"cauchy"`` (independent standard Cauchy coordinates) or
    ``"cauchy-isotropic"`` (spherical multivariate Cauchy, i.e. multivariate
    t with one degree of freedom); for the Cauchy families the second sample
    is ``shift + scale * Y``.  The first sample is always drawn from the
    standard member of the family.
    """

    dimension: int
    family: str
    m: int
    n: int
    shift: tuple[float, ...] = ()
    covariance: tuple[tuple[float, ...], ...] | None = None
    scale: float = 1.0

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise ValueError("dimension must be positive")
        if self.family not in (NORMAL, CAUCHY, CAUCHY_ISOTROPIC):
            raise ValueError(f"unknown family {self.family!r}")
        if self.m < 1 or self.n < 1:
            raise ValueError("group sizes must be positive")
        shift = self.shift or tuple(0.0 for _ in range(self.dimension))
        if len(shift) != self.dimension:
            raise ValueError("shift length must match dimension")
        object.__setattr__(self, "shift", tuple(float(s) for s in shift))
        if self.family == NORMAL:
            cov = self.covariance
            if cov is None:
                cov = tuple(
                    tuple(1.0 if i == j else 0.0 for j in range(self.dimension))
                    for i in range(self.dimension)
                )
            arr = np.asarray(cov, dtype=float)
            if arr.shape != (self.dimension, self.dimension):
                raise ValueError("covariance must be dimension x dimension")
            if not np.allclose(arr, arr.T):
                raise ValueError("covariance must be symmetric")
            object.__setattr__(self, "covariance", tuple(map(tuple, arr)))
        if not self.scale > 0:
            raise ValueError("scale must be positive")

    @property
    def cov_array(self) -> np.ndarray | None:
        if self.covariance is None:
            return None
        return np.asarray(self.covariance, dtype=float)

    @classmethod
    def from_dict(cls, data: dict) -> "MultivariateScenario":
        known = {"dimension", "family", "m", "n", "shift", "covariance", "scale"}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown scenario fields: {sorted(unknown)}")
        kwargs = dict(data)
        if "shift" in kwargs:
            kwargs["shift"] = tuple(kwargs["shift"])
        if kwargs.get("covariance") is not None:
            kwargs["covariance"] = tuple(map(tuple, kwargs["covariance"]))
        return cls(**kwargs)

    @classmethod
    def from_file(cls, path: str | Path) -> "MultivariateScenario":
        """Read a scenario from a JSON or TOML file (by extension)."""
        path = Path(path)
        if path.suffix.lower() == ".toml":
            data = tomllib.loads(path.read_text())
        else:
            data = json.loads(path.read_text())
        return cls.from_dict(data)


def _cholesky(cov: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.cholesky(cov)
    except np.linalg.LinAlgError as exc:
        raise np.linalg.LinAlgError("covariance matrix is not positive definite") from exc


def sample_scenario(
    scenario: MultivariateScenario, seed: RngSeed | int | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Draw the two groups; returns ``(X, Y)`` with shapes (m, p) and (n, p).

    Normal draws go through the Cholesky factor of the covariance;
    independent Cauchy coordinates are generated as tan(pi (U - 1/2)), the
    isotropic variant as a normal vector over an independent half-normal
    radius divisor, and the second group is shifted and scaled afterwards.
    """
    rng = as_seed(seed).generator()
    p, m, n = scenario.dimension, scenario.m, scenario.n
    shift = np.asarray(scenario.shift)
    if scenario.family == NORMAL:
        root = _cholesky(scenario.cov_array)
        x = rng.standard_normal((m, p))
        y = shift + rng.standard_normal((n, p)) @ root.T
        return x, y
    if scenario.family == CAUCHY:
        u = rng.random((m + n, p))
        z = np.tan(np.pi * (u - 0.5))
    else:
        z = rng.standard_normal((m + n, p)) / np.abs(rng.standard_normal((m + n, 1)))
    return z[:m], shift + scenario.scale * z[m:]


def write_samples(path: str | Path, values: np.ndarray, group: int | None = None) -> None:
    """Write observations to CSV, one per row; optional constant group column."""
    values = np.atleast_2d(np.asarray(values, dtype=float))
    header = [f"x{j + 1}" for j in range(values.shape[1])]
    if group is not None:
        header.append("group")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in values:
            out = [repr(float(v)) for v in row]
            if group is not None:
                out.append(str(group))
            writer.writerow(out)
