"""Rabi-frequency pulse envelopes with exact area accounting.

Every envelope reports its support via breakpoints() so integrators can
split the time axis at non-smooth points instead of stepping blindly
across discontinuities or gaps.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import OverlapError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Constant:
    """Rectangular envelope of area theta: value theta/tau on the support."""

    theta: float  # pulse area (rad)
    tau: float  # duration (s)
    t_start: float = 0.0

    def __post_init__(self):
        if self.tau <= 0:
            raise ValueError(f"tau must be positive, got {self.tau}")

    @property
    def duration(self) -> float:
        return self.tau

    def value(self, t: float) -> float:
        if self.t_start <= t <= self.t_start + self.tau:
            return self.theta / self.tau
        return 0.0

    def area(self) -> float:
        return self.theta

    def breakpoints(self):
        return [self.t_start, self.t_start + self.tau]

    def scaled(self, factor: float) -> "Constant":
        return replace(self, theta=self.theta * factor)


@dataclass(frozen=True)
class Sine:
    """Half-sine envelope of area theta: smooth turn-on and turn-off.

    value(t) = omega_max * sin(pi (t - t_start) / tau), omega_max = pi theta / (2 tau).
    """

    theta: float
    tau: float
    t_start: float = 0.0

    def __post_init__(self):
        if self.tau <= 0:
            raise ValueError(f"tau must be positive, got {self.tau}")

    @property
    def duration(self) -> float:
        return self.tau

    @property
    def omega_max(self) -> float:
        return math.pi * self.theta / (2 * self.tau)

    def value(self, t: float) -> float:
        x = t - self.t_start
        if 0.0 <= x <= self.tau:
            return self.omega_max * math.sin(math.pi * x / self.tau)
        return 0.0

    def area(self) -> float:
        return self.theta

    def breakpoints(self):
        return [self.t_start, self.t_start + self.tau]

    def scaled(self, factor: float) -> "Sine":
        return replace(self, theta=self.theta * factor)


@dataclass(frozen=True)
class PulseTrain:
    """Rectangular sub-pulses on a regular comb.

    Sub-pulse j has height amps[j] (rad/s) and width `width`, centered at
    t_start + (j + 1/2) * 2 pi / rep_rate. Amplitudes are free parameters:
    with_amps() returns a copy carrying new heights.
    """

    amps: tuple
    width: float  # s
    rep_rate: float  # comb angular frequency (rad/s)
    t_start: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "amps", tuple(float(a) for a in self.amps))
        if not self.amps:
            raise ValueError("pulse train needs at least one sub-pulse")
        if self.width <= 0 or self.rep_rate <= 0:
            raise ValueError("width and rep_rate must be positive")
        if self.width > self.period:
            raise OverlapError(
                f"sub-pulse width {self.width:.3e} s exceeds comb period "
                f"{self.period:.3e} s"
            )

    @property
    def period(self) -> float:
        return TWO_PI / self.rep_rate

    @property
    def n_pulses(self) -> int:
        return len(self.amps)

    @property
    def duration(self) -> float:
        return self.n_pulses * self.period

    def centers(self) -> np.ndarray:
        return self.t_start + (np.arange(self.n_pulses) + 0.5) * self.period

    def value(self, t: float) -> float:
        j = math.floor((t - self.t_start) / self.period)
        if 0 <= j < self.n_pulses:
            c = self.t_start + (j + 0.5) * self.period
            if abs(t - c) <= self.width / 2:
                return self.amps[j]
        return 0.0

    def area(self) -> float:
        return self.width * float(sum(self.amps))

    def breakpoints(self):
        pts = [self.t_start]
        for c in self.centers():
            pts.extend([c - self.width / 2, c + self.width / 2])
        pts.append(self.t_start + self.duration)
        return pts

    def with_amps(self, amps) -> "PulseTrain":
        return replace(self, amps=tuple(float(a) for a in amps))

    def scaled(self, factor: float) -> "PulseTrain":
        return self.with_amps([a * factor for a in self.amps])


Envelope = Constant | Sine | PulseTrain


def sine_sampled_train(theta: float, n: int, width: float, rep_rate: float,
                       t_start: float = 0.0) -> PulseTrain:
    """Pulse train sampling a half-sine profile, rescaled to total area theta."""
    if n < 1:
        raise ValueError(f"need n >= 1 sub-pulses, got {n}")
    weights = np.sin(math.pi * (np.arange(n) + 0.5) / n)
    amps = weights * (theta / (weights.sum() * width))
    return PulseTrain(amps=tuple(amps), width=width, rep_rate=rep_rate, t_start=t_start)
