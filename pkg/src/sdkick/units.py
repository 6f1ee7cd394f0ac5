"""Unit-suffixed scalar parsing.

Internally every frequency is an angular frequency in rad/s. User-facing
values carry explicit unit suffixes: ordinary frequencies ("10 GHz") are
multiplied by 2*pi on ingestion, "rad/s" values are taken as-is. Durations
and angles are parsed the same way ("5 ns", "0.17 turns", "1.2 rad").
"""

import math

TWO_PI = 2.0 * math.pi

_FREQUENCY = {
    "hz": TWO_PI,
    "khz": TWO_PI * 1e3,
    "mhz": TWO_PI * 1e6,
    "ghz": TWO_PI * 1e9,
    "thz": TWO_PI * 1e12,
    "rad/s": 1.0,
}

_DURATION = {
    "s": 1.0,
    "ms": 1e-3,
    "us": 1e-6,
    "µs": 1e-6,
    "ns": 1e-9,
    "ps": 1e-12,
    "fs": 1e-15,
}

_ANGLE = {
    "rad": 1.0,
    "turns": TWO_PI,
    "turn": TWO_PI,
    "deg": TWO_PI / 360.0,
}


def _split(text):
    parts = str(text).strip().split()
    if len(parts) != 2:
        raise ValueError(f"expected '<number> <unit>', got {text!r}")
    try:
        value = float(parts[0])
    except ValueError as exc:
        raise ValueError(f"bad numeric value in {text!r}") from exc
    return value, parts[1].lower()


def _parse(text, table, kind):
    value, unit = _split(text)
    try:
        return value * table[unit]
    except KeyError:
        raise ValueError(
            f"unknown {kind} unit {unit!r} in {text!r} "
            f"(accepted: {', '.join(sorted(table))})"
        ) from None


def angular_frequency(text) -> float:
    """Parse a frequency with unit suffix into rad/s ("10 GHz" -> 2*pi*1e10)."""
    return _parse(text, _FREQUENCY, "frequency")


def duration(text) -> float:
    """Parse a duration with unit suffix into seconds ("5 ns" -> 5e-9)."""
    return _parse(text, _DURATION, "duration")


def angle(text) -> float:
    """Parse an angle into radians ("0.17 turns" -> 2*pi*0.17)."""
    return _parse(text, _ANGLE, "angle")
