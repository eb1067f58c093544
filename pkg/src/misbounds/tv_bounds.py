"""Total-variation bounds on the Bayes error.

The separation statistic Delta sums the total variation distances over all
label pairs of the joint sub-measures; it ranges from 0 (indistinguishable
classes) to k-1 (pairwise disjoint supports).  The Bayes error is pinned
between an affine lower bound L and a piecewise-linear upper bound U of
Delta, and both are attained by explicit posterior profiles.  A rational
brute-force oracle certifies attainment and strictness on simplex grids
without any float tolerance.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import OutOfRangeError, TooFewClassesError, TooLargeError
from .model import JointModel, PosteriorProfile

# Ceil is discontinuous, so a separation value that lands on an integer up
# to representation error (2.0000000000000004) must be snapped before
# rounding up, or the whole interpolation segment shifts.
INTEGER_SNAP = 1e-9

GRID_LIMIT = 10**7


@dataclass(frozen=True)
class DeltaValue:
    """Pairwise total-variation sum together with its class count."""

    delta: float
    k: int

    def __post_init__(self):
        if self.k < 2:
            raise TooFewClassesError(f"need at least 2 classes, got k={self.k}")
        d = _into_domain(self.k, self.delta)
        object.__setattr__(self, "delta", d)


def _into_domain(k: int, delta: float) -> float:
    """Clamp delta into [0, k-1], allowing INTEGER_SNAP of float overshoot."""
    hi = float(k - 1)
    if delta < -INTEGER_SNAP or delta > hi + INTEGER_SNAP:
        raise OutOfRangeError(f"delta={delta!r} outside [0, {k - 1}]")
    return min(max(delta, 0.0), hi)


def _snapped_ceil(delta: float) -> int:
    nearest = round(delta)
    if abs(delta - nearest) <= INTEGER_SNAP:
        return int(nearest)
    return math.ceil(delta)


def delta(model: JointModel) -> DeltaValue:
    """Sum over label pairs y < z of sum_x |w[y,x] - w[z,x]|."""
    w = model.w
    pairwise = np.abs(w[:, None, :] - w[None, :, :]).sum(axis=2)
    return DeltaValue(delta=float(pairwise.sum()) / 2.0, k=model.k)


def delta_of_profile(profile: PosteriorProfile) -> DeltaValue:
    """Pairwise absolute-difference sum of a single posterior profile."""
    a = profile.a
    pairwise = np.abs(a[:, None] - a[None, :]).sum()
    return DeltaValue(delta=float(pairwise) / 2.0, k=profile.k)


def lower_bound(k: int, delta: float) -> float:
    """L(delta) = 1 - (1 + delta)/k, affine from 1 - 1/k down to 0."""
    if k < 2:
        raise TooFewClassesError(f"need at least 2 classes, got k={k}")
    d = _into_domain(k, delta)
    return 1.0 - (1.0 + d) / k


def upper_bound(k: int, delta: float) -> float:
    """Tight upper bound: linear interpolation of 1 - 1/(k - m) between integers m."""
    if k < 2:
        raise TooFewClassesError(f"need at least 2 classes, got k={k}")
    d = _into_domain(k, delta)
    m = _snapped_ceil(d)
    return 1.0 - (k + 1 + d - 2 * m) / ((k - m) * (k + 1 - m))


def upper_bound_simpl(k: int, delta: float) -> float:
    """Smooth relaxation 1 - 1/(k - delta); ties upper_bound exactly at integers."""
    if k < 2:
        raise TooFewClassesError(f"need at least 2 classes, got k={k}")
    d = _into_domain(k, delta)
    return 1.0 - 1.0 / (k - d)


def extremal_low_profile(k: int, d: float) -> PosteriorProfile:
    """Profile attaining the lower bound: one lifted entry over a flat tail."""
    if k < 2:
        raise TooFewClassesError(f"need at least 2 classes, got k={k}")
    d = _into_domain(k, d)
    a = np.full(k, 1.0 / k - d / (k * (k - 1.0)))
    a[0] = (1.0 + d) / k
    return PosteriorProfile(a=a)


def extremal_high_profile(k: int, d: float) -> PosteriorProfile:
    """Profile attaining the upper bound: a flat top block, one remainder, zeros."""
    if k < 2:
        raise TooFewClassesError(f"need at least 2 classes, got k={k}")
    d = _into_domain(k, d)
    m = _snapped_ceil(d)
    top = (k + 1 + d - 2 * m) / ((k - m) * (k + 1 - m))
    a = np.zeros(k)
    a[: k - m] = top
    if m >= 1:
        a[k - m] = (m - d) / (k + 1 - m)
    return PosteriorProfile(a=a)


# --- exact-rational grid oracle --------------------------------------------


@dataclass(frozen=True)
class OracleReport:
    """Outcome of an exhaustive rational check of one simplex grid."""

    k: int
    N: int
    checked: int
    low_equalities: int
    high_equalities: int
    violations: tuple = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> str:
        return json.dumps(
            {
                "k": self.k,
                "N": self.N,
                "checked": self.checked,
                "low_equalities": self.low_equalities,
                "high_equalities": self.high_equalities,
                "violations": [
                    {
                        "profile": [str(c) for c in v[0]],
                        "delta": str(v[1]),
                        "value": str(v[2]),
                        "bound": str(v[3]),
                        "side": v[4],
                    }
                    for v in self.violations
                ],
            }
        )


def _compositions(total: int, parts: int):
    """All ordered tuples of `parts` nonnegative ints summing to `total`."""
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(total + parts - 2 - prev)
        yield tuple(out)


def _rational_bounds(k: int, d: Fraction):
    L = 1 - Fraction(1 + d, k)
    m = math.ceil(d)
    U = 1 - Fraction(k + 1 + d - 2 * m, (k - m) * (k + 1 - m))
    U_simpl = 1 - 1 / Fraction(k - d)
    return L, U, U_simpl, m


def _rational_low_profile(k: int, d: Fraction) -> tuple:
    tail = Fraction(k - 1 - d, k * (k - 1))
    prof = (Fraction(1 + d, k),) + (tail,) * (k - 1)
    return tuple(sorted(prof, reverse=True))


def _rational_high_profile(k: int, d: Fraction) -> tuple:
    m = math.ceil(d)
    top = Fraction(k + 1 + d - 2 * m, (k - m) * (k + 1 - m))
    prof = [top] * (k - m) + [Fraction(0)] * m
    if m >= 1:
        prof[k - m] = Fraction(m - d, k + 1 - m)
    return tuple(sorted(prof, reverse=True))


def simplex_grid_oracle(k: int, N: int) -> OracleReport:
    """Certify the bound chain and its equality cases on the whole i/N grid.

    Every profile with entries i/N is evaluated in exact rational arithmetic:
    the chain L <= 1 - max <= U <= U_simpl must hold, U must tie U_simpl
    exactly at integer delta and beat it strictly otherwise, and equality at
    either end must occur precisely when the profile is a permutation of the
    matching extremal profile.
    """
    if k < 2:
        raise TooFewClassesError(f"need at least 2 classes, got k={k}")
    if N < 1:
        raise OutOfRangeError(f"grid resolution N={N} must be >= 1")
    count = math.comb(N + k - 1, k - 1)
    if count > GRID_LIMIT:
        raise TooLargeError(f"C({N + k - 1},{k - 1}) = {count} profiles exceeds {GRID_LIMIT}")

    checked = 0
    low_eq = 0
    high_eq = 0
    violations = []
    for comp in _compositions(N, k):
        a = tuple(Fraction(c, N) for c in comp)
        d = sum(abs(a[i] - a[j]) for i in range(k) for j in range(i + 1, k))
        value = 1 - max(a)
        L, U, U_simpl, m = _rational_bounds(k, d)

        if not L <= value:
            violations.append((comp, d, value, L, "below_lower"))
        if not value <= U:
            violations.append((comp, d, value, U, "above_upper"))
        if not U <= U_simpl:
            violations.append((comp, d, U, U_simpl, "upper_chain"))
        if d == m and U != U_simpl:
            violations.append((comp, d, U, U_simpl, "integer_tie"))
        if d != m and not U < U_simpl:
            violations.append((comp, d, U, U_simpl, "strictness"))

        sorted_desc = tuple(sorted(a, reverse=True))
        at_low = value == L
        at_high = value == U
        if at_low != (sorted_desc == _rational_low_profile(k, d)):
            violations.append((comp, d, value, L, "low_iff"))
        if at_high != (sorted_desc == _rational_high_profile(k, d)):
            violations.append((comp, d, value, U, "high_iff"))
        low_eq += at_low
        high_eq += at_high
        checked += 1

    violations.sort(key=lambda v: v[0])
    return OracleReport(
        k=k,
        N=N,
        checked=checked,
        low_equalities=low_eq,
        high_equalities=high_eq,
        violations=tuple(violations),
    )
