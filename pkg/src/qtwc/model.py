"""Core value types: constellations, saturating uniform quantizers, channel
configuration, and rate pairs.

A constellation is a finite set of distinct, equiprobable complex signal
points together with its declared average-power budget.  Constellations whose
points all have exactly zero imaginary part are one-dimensional and may be
used with 1-D quantizers; anything genuinely complex needs a 2-D quantizer.

The channel couples two users: each receiver hears its own transmitter (the
self-interference path) plus the far transmitter, in additive Gaussian noise,
and quantizes the result with a uniform saturating quantizer.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from typing import Any

import numpy as np

_POWER_RTOL = 1e-9


@dataclass(frozen=True)
class Constellation:
    """Equiprobable signal set with a declared average power."""

    points: tuple[complex, ...]
    power: float

    def __post_init__(self) -> None:
        pts = tuple(complex(p) for p in self.points)
        if len(pts) < 1:
            raise ValueError("constellation needs at least one point")
        if any(not (math.isfinite(p.real) and math.isfinite(p.imag)) for p in pts):
            raise ValueError("constellation points must be finite")
        if len(set(pts)) != len(pts):
            raise ValueError("constellation points must be distinct")
        power = float(self.power)
        if not math.isfinite(power) or power < 0.0:
            raise ValueError("power must be finite and nonnegative")
        mean_sq = sum(abs(p) ** 2 for p in pts) / len(pts)
        if abs(mean_sq - power) > _POWER_RTOL * max(1.0, power):
            raise ValueError(
                f"average point power {mean_sq!r} does not match budget {power!r}"
            )
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "power", power)

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def is_1d(self) -> bool:
        """True when every point lies exactly on the real axis."""
        return all(p.imag == 0.0 for p in self.points)

    def points_array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=np.complex128)

    def scaled(self, amplitude_factor: float) -> "Constellation":
        """Same geometry with every amplitude multiplied by a positive factor."""
        f = float(amplitude_factor)
        if not math.isfinite(f) or f <= 0.0:
            raise ValueError("amplitude factor must be positive and finite")
        return Constellation(
            tuple(p * f for p in self.points), self.power * f * f
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "points": [[p.real, p.imag] for p in self.points],
            "power": self.power,
        }

    @classmethod
    def from_json(cls, doc: dict[str, Any]) -> "Constellation":
        pts = tuple(complex(re, im) for re, im in doc["points"])
        return cls(points=pts, power=float(doc["power"]))


def make_pam(k: int, power: float) -> Constellation:
    """Symmetric pulse-amplitude constellation of ``k`` points on the real axis.

    Spacing is chosen so the average power equals ``power`` exactly:
    points sit at odd multiples of ``sqrt(3 * power / (k**2 - 1))``.
    """
    if k < 2 or k % 2 != 0:
        raise ValueError("PAM size must be an even integer >= 2")
    if not power > 0.0:
        raise ValueError("power must be positive")
    delta = math.sqrt(3.0 * power / (k * k - 1))
    amps = [(2 * i + 1 - k) * delta for i in range(k)]
    return Constellation(tuple(complex(a, 0.0) for a in amps), float(power))


def make_psk(k: int, power: float, phase0_deg: float = 0.0) -> Constellation:
    """``k`` points equally spaced on the circle of radius ``sqrt(power)``.

    Components within a relative 1e-12 of zero are snapped to exact zero so
    axis-aligned constellations (BPSK, unrotated QPSK) stay exactly 1-D or
    axis-symmetric.
    """
    if k < 2:
        raise ValueError("PSK size must be >= 2")
    if not power > 0.0:
        raise ValueError("power must be positive")
    radius = math.sqrt(power)
    snap = 1e-12 * radius
    pts = []
    for i in range(k):
        z = radius * cmath.exp(1j * math.radians(phase0_deg + 360.0 * i / k))
        re = 0.0 if abs(z.real) < snap else z.real
        im = 0.0 if abs(z.imag) < snap else z.imag
        pts.append(complex(re, im))
    return Constellation(tuple(pts), float(power))


def rotate(c: Constellation, theta_deg: float) -> Constellation:
    """Rotate every point by ``theta_deg`` degrees; power is preserved."""
    u = cmath.exp(1j * math.radians(theta_deg))
    return Constellation(tuple(p * u for p in c.points), c.power)


@dataclass(frozen=True)
class UniformQuantizer:
    """Uniform saturating quantizer: even cell count, equal interior grain.

    ``levels`` counts the cells of the first (real) dimension; ``levels2 = 0``
    marks a one-dimensional quantizer, otherwise it counts the cells of the
    second (imaginary) dimension.  The finite boundaries of an M-cell
    dimension sit at ``(i - M/2) * grain`` for ``i = 1 .. M-1``, so the
    partition is centered on zero and the two end cells are unbounded.
    """

    levels: int
    grain: float
    levels2: int = 0

    def __post_init__(self) -> None:
        if self.levels < 2 or self.levels % 2 != 0:
            raise ValueError("levels must be an even integer >= 2")
        if self.levels2 != 0 and (self.levels2 < 2 or self.levels2 % 2 != 0):
            raise ValueError("levels2 must be 0 (1-D) or an even integer >= 2")
        if not (math.isfinite(self.grain) and self.grain > 0.0):
            raise ValueError("grain must be positive and finite")

    @property
    def is_two_dim(self) -> bool:
        return self.levels2 > 0

    @property
    def num_cells(self) -> int:
        return self.levels * self.levels2 if self.is_two_dim else self.levels

    def boundaries(self) -> tuple[np.ndarray, ...]:
        """Finite cell boundaries, one increasing array per dimension."""
        first = (np.arange(1, self.levels) - self.levels / 2.0) * self.grain
        if not self.is_two_dim:
            return (first,)
        second = (np.arange(1, self.levels2) - self.levels2 / 2.0) * self.grain
        return (first, second)

    def to_json(self) -> dict[str, Any]:
        return {"levels": self.levels, "levels2": self.levels2, "grain": self.grain}

    @classmethod
    def from_json(cls, doc: dict[str, Any]) -> "UniformQuantizer":
        return cls(
            levels=int(doc["levels"]),
            grain=float(doc["grain"]),
            levels2=int(doc.get("levels2", 0)),
        )


def boundaries(qz: UniformQuantizer) -> tuple[np.ndarray, ...]:
    """Finite boundaries of each quantizer dimension (see the class docs)."""
    return qz.boundaries()


def _cell_index(edges: np.ndarray, value: float) -> int:
    # Cells are half-open [b_{i-1}, b_i); values beyond the last finite
    # boundary saturate into the end cells.
    return int(np.searchsorted(edges, value, side="right")) + 1


def quantize(qz: UniformQuantizer, y) -> int | tuple[int, int]:
    """Map a received value to its 1-based cell index per dimension.

    1-D quantizers take a real number and return one index; 2-D quantizers
    take a complex number (or an (re, im) pair) and return an index pair.
    """
    if qz.is_two_dim:
        if isinstance(y, complex):
            re, im = y.real, y.imag
        elif isinstance(y, (int, float, np.floating, np.integer)):
            re, im = float(y), 0.0
        else:
            re, im = float(y[0]), float(y[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise ValueError("value to quantize must be finite")
        first, second = qz.boundaries()
        return (_cell_index(first, re), _cell_index(second, im))
    if isinstance(y, complex):
        if y.imag != 0.0:
            raise ValueError("1-D quantizer cannot quantize a complex value")
        y = y.real
    val = float(y)
    if not math.isfinite(val):
        raise ValueError("value to quantize must be finite")
    return _cell_index(qz.boundaries()[0], val)


@dataclass(frozen=True)
class ChannelConfig:
    """Gains, noise power, and per-user power budgets of the two-way link.

    Receiver 1 observes ``self1 * x1 + cross1 * x2 + noise``; receiver 2
    observes ``cross2 * x1 + self2 * x2 + noise``.  ``noise_var`` is the total
    noise variance (per-component variance is half of it in the 2-D model);
    ``power1`` / ``power2`` are the Gaussian-input power budgets and the SNR
    reference for each user.
    """

    self1: float
    cross1: float
    cross2: float
    self2: float
    noise_var: float
    power1: float
    power2: float

    def __post_init__(self) -> None:
        gains = (self.self1, self.cross1, self.cross2, self.self2)
        if any(not math.isfinite(g) for g in gains):
            raise ValueError("channel gains must be finite")
        if not (math.isfinite(self.noise_var) and self.noise_var > 0.0):
            raise ValueError("noise_var must be positive and finite")
        if not (self.power1 > 0.0 and self.power2 > 0.0):
            raise ValueError("power budgets must be positive")

    @classmethod
    def unit(
        cls, power1: float, power2: float | None = None, noise_var: float = 1.0
    ) -> "ChannelConfig":
        """All-unity gains; the usual symmetric benchmark configuration."""
        p2 = power1 if power2 is None else power2
        return cls(
            self1=1.0,
            cross1=1.0,
            cross2=1.0,
            self2=1.0,
            noise_var=noise_var,
            power1=power1,
            power2=p2,
        )

    def with_noise_var(self, noise_var: float) -> "ChannelConfig":
        return replace(self, noise_var=noise_var)


@dataclass(frozen=True)
class RatePair:
    """Per-direction information rates in bits per channel use."""

    r1: float
    r2: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.r1) and math.isfinite(self.r2)):
            raise ValueError("rates must be finite")
        if self.r1 < 0.0 or self.r2 < 0.0:
            raise ValueError("rates must be nonnegative")

    @property
    def sum_rate(self) -> float:
        return self.r1 + self.r2

    def swapped(self) -> "RatePair":
        return RatePair(self.r2, self.r1)


def unquantized_capacity(cfg: ChannelConfig) -> RatePair:
    """Capacity rectangle of the link without output quantization.

    With a linear front end each user subtracts its own contribution exactly,
    leaving two parallel Gaussian channels.
    """
    r1 = 0.5 * math.log2(1.0 + cfg.cross2**2 * cfg.power1 / cfg.noise_var)
    r2 = 0.5 * math.log2(1.0 + cfg.cross1**2 * cfg.power2 / cfg.noise_var)
    return RatePair(r1, r2)


def constellation_from_spec(
    spec: str, power: float, theta_deg: float = 0.0
) -> Constellation:
    """Build a named constellation: ``bpsk``, ``qpsk``, ``pam4`` or ``pam8``.

    ``qpsk`` points sit on the diagonals (first point at 45 degrees).  An
    optional rotation is applied afterwards.
    """
    name = spec.lower()
    if name == "bpsk":
        c = make_psk(2, power, 0.0)
    elif name == "qpsk":
        c = make_psk(4, power, 45.0)
    elif name == "pam4":
        c = make_pam(4, power)
    elif name == "pam8":
        c = make_pam(8, power)
    else:
        raise ValueError(f"unknown constellation spec: {spec!r}")
    return rotate(c, theta_deg) if theta_deg else c
