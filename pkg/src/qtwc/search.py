"""Grid searches and set constructions built on the rate engines: quantizer
grain optimization, rotation-angle sweeps, unique-decodability tests, and
achievable-region polygons."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from .mi_discrete import rate_pair_discrete
from .model import (
    ChannelConfig,
    Constellation,
    RatePair,
    UniformQuantizer,
    quantize,
    rotate,
)
from .numerics import RegionPolygon, convex_hull


@dataclass(frozen=True)
class SweepResult:
    """Rates over a parameter grid plus the argmax of the sweep objective.

    ``objective`` is what the sweep maximized (the swept rate for grain
    sweeps, the sum rate for rotation sweeps); exact ties go to the earliest
    grid entry.
    """

    grid: tuple[float, ...]
    rates: tuple[RatePair, ...]
    objective: tuple[float, ...]
    argmax: float

    def __post_init__(self) -> None:
        if not (len(self.grid) == len(self.rates) == len(self.objective)):
            raise ValueError("grid, rates and objective lengths must match")
        if self.argmax not in self.grid:
            raise ValueError("argmax must be a grid entry")

    @property
    def best_index(self) -> int:
        return self.grid.index(self.argmax)

    @property
    def best_rates(self) -> RatePair:
        return self.rates[self.best_index]

    def to_json(self) -> dict[str, Any]:
        return {
            "grid": list(self.grid),
            "rates": [[rp.r1, rp.r2] for rp in self.rates],
            "objective": list(self.objective),
            "argmax": self.argmax,
        }

    def write_csv(self, path: str | Path, header: dict[str, Any] | None = None) -> None:
        rows = (
            (g, rp.r1, rp.r2, obj)
            for g, rp, obj in zip(self.grid, self.rates, self.objective)
        )
        write_csv_table(
            path,
            ("param", "r1", "r2", "objective"),
            rows,
            dict(header or {}, argmax=self.argmax),
        )


def write_csv_table(
    path: str | Path,
    columns: Sequence[str],
    rows: Iterable[Sequence[float]],
    header: dict[str, Any] | None = None,
) -> None:
    """Write a CSV with '#'-prefixed metadata lines and full float precision.

    Values are formatted with %.17g so reading the file back reproduces the
    in-memory doubles exactly.
    """
    lines = []
    for key, value in (header or {}).items():
        lines.append(f"# {key}: {value}")
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_format_value(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def _format_value(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def read_csv_table(path: str | Path) -> tuple[list[str], np.ndarray]:
    """Read back a CSV written by :func:`write_csv_table`."""
    columns: list[str] = []
    data: list[list[float]] = []
    for line in Path(path).read_text().splitlines():
        if not line or line.startswith("#"):
            continue
        if not columns:
            columns = line.split(",")
            continue
        data.append([float(tok) for tok in line.split(",")])
    return columns, np.asarray(data, dtype=np.float64)


def _validated_grid(grid, name: str, positive: bool = False) -> tuple[float, ...]:
    vals = tuple(float(g) for g in grid)
    if not vals:
        raise ValueError(f"{name} must not be empty")
    if any(not math.isfinite(v) for v in vals):
        raise ValueError(f"{name} entries must be finite")
    if any(b <= a for a, b in zip(vals, vals[1:])):
        raise ValueError(f"{name} must be strictly increasing")
    if positive and vals[0] <= 0.0:
        raise ValueError(f"{name} entries must be positive")
    return vals


def default_grain_grid() -> np.ndarray:
    """Grain grid 0.05 .. 3.0 in steps of 0.05."""
    return np.arange(1, 61) * 0.05


def default_theta_grid() -> np.ndarray:
    """Rotation grid 0 .. 90 degrees in steps of 1 degree."""
    return np.arange(0.0, 91.0, 1.0)


def grain_sweep(
    rate_fn: Callable[[float], float | RatePair], q_grid
) -> SweepResult:
    """Evaluate a rate function over a grain grid and pick the best grain.

    ``rate_fn`` may return a bare rate (recorded in both slots of the rate
    pair) or a :class:`RatePair`, in which case the forward rate ``r1`` is
    the objective.  Ties break toward the smaller grain.
    """
    grid = _validated_grid(q_grid, "q_grid", positive=True)
    rates = []
    objective = []
    for q in grid:
        value = rate_fn(q)
        if isinstance(value, RatePair):
            rates.append(value)
            objective.append(value.r1)
        else:
            r = float(value)
            rates.append(RatePair(r, r))
            objective.append(r)
    best = int(np.argmax(objective))
    return SweepResult(grid, tuple(rates), tuple(objective), grid[best])


def rotation_sweep(
    c: Constellation,
    cfg: ChannelConfig,
    qz: UniformQuantizer,
    theta_grid,
) -> SweepResult:
    """Sweep the rotation applied to user 2's copy of constellation ``c``.

    User 1 transmits ``c`` unchanged and user 2 transmits ``c`` rotated by
    each grid angle; the objective is the sum rate, with ties toward the
    earliest (smallest) angle.
    """
    grid = _validated_grid(theta_grid, "theta_grid")
    rates = []
    for theta in grid:
        rates.append(rate_pair_discrete(c, rotate(c, theta), cfg, qz))
    objective = tuple(rp.sum_rate for rp in rates)
    best = int(np.argmax(objective))
    return SweepResult(grid, tuple(rates), objective, grid[best])


@dataclass(frozen=True)
class Collision:
    """Two distinct input pairs whose noiseless sums share a quantizer cell."""

    receiver: int
    pair_a: tuple[complex, complex]
    pair_b: tuple[complex, complex]

    def to_json(self) -> dict[str, Any]:
        def pair(p: tuple[complex, complex]) -> list[list[float]]:
            return [[p[0].real, p[0].imag], [p[1].real, p[1].imag]]

        return {
            "receiver": self.receiver,
            "pair_a": pair(self.pair_a),
            "pair_b": pair(self.pair_b),
        }


@dataclass(frozen=True)
class UdReport:
    """Outcome of a unique-decodability test for a constellation pair."""

    is_ud: bool
    collisions: tuple[Collision, ...]

    def __post_init__(self) -> None:
        if self.is_ud != (len(self.collisions) == 0):
            raise ValueError("is_ud must match collision emptiness")

    def to_json(self) -> dict[str, Any]:
        return {
            "is_ud": self.is_ud,
            "collisions": [c.to_json() for c in self.collisions],
        }


def ud_check(
    c1: Constellation,
    c2: Constellation,
    cfg: ChannelConfig,
    qz: UniformQuantizer,
) -> UdReport:
    """Test whether the pair is uniquely decodable through the quantizer.

    Enumerates the noiseless received sums of every input pair at both
    receivers, quantizes them, and reports every two distinct pairs that
    share a cell at either receiver.  The pair is uniquely decodable exactly
    when there are no collisions.
    """
    if not qz.is_two_dim and not (c1.is_1d and c2.is_1d):
        raise ValueError("1-D quantizer cannot carry a 2-D constellation")
    collisions: list[Collision] = []
    for receiver, (g1, g2) in ((1, (cfg.self1, cfg.cross1)), (2, (cfg.cross2, cfg.self2))):
        by_cell: dict[Any, list[tuple[complex, complex]]] = {}
        for x1 in c1.points:
            for x2 in c2.points:
                y = g1 * x1 + g2 * x2
                cell = quantize(qz, y if qz.is_two_dim else y.real)
                by_cell.setdefault(cell, []).append((x1, x2))
        for members in by_cell.values():
            for i in range(len(members)):
                for j in range(i + 1, len(members)):
                    collisions.append(Collision(receiver, members[i], members[j]))
    return UdReport(is_ud=not collisions, collisions=tuple(collisions))


def sum_rate_limit(
    c1: Constellation,
    c2: Constellation,
    cfg: ChannelConfig,
    qz: UniformQuantizer,
    snr_scale: float,
) -> float:
    """Sum rate of a uniquely decodable pair at a scaled SNR.

    The SNR multiplier shrinks the noise while the constellation/quantizer
    geometry stays fixed, so the unique-decodability structure established by
    :func:`ud_check` is preserved; as the multiplier grows the sum rate
    approaches ``log2(K1) + log2(K2)``.  A multiplier of zero means all-noise
    and returns 0.
    """
    if not snr_scale >= 0.0:
        raise ValueError("snr_scale must be nonnegative")
    if snr_scale == 0.0:
        return 0.0
    if not ud_check(c1, c2, cfg, qz).is_ud:
        raise ValueError("constellation pair is not uniquely decodable")
    scaled = cfg.with_noise_var(cfg.noise_var / snr_scale)
    return rate_pair_discrete(c1, c2, scaled, qz).sum_rate


def achievable_region(rate_pairs: Iterable[RatePair]) -> RegionPolygon:
    """Time-sharing closure of a set of rate pairs.

    Convex hull of the pairs together with their single-user projections and
    the origin (either user may stay silent for part of the time).
    """
    pts: list[tuple[float, float]] = [(0.0, 0.0)]
    count = 0
    for rp in rate_pairs:
        pts.extend([(rp.r1, rp.r2), (rp.r1, 0.0), (0.0, rp.r2)])
        count += 1
    if count == 0:
        raise ValueError("need at least one rate pair")
    return convex_hull(pts)
