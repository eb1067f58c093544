"""Entropy-based bounds on the Bayes error, and a counterexample evaluator.

Conditional Shannon entropy H (in nats) pins the Bayes error between the
Feder-Merhav bounds: the lower bound inverts the strictly increasing map
phi(p) = p ln(k-1) + h2(p), and the upper bound is piecewise linear in H
with knots at ln m.  Renyi conditional entropy (base 2) exists only to
evaluate a published two-class fixture on which a claimed entropy upper
bound goes negative, refuting it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bayes import bayes_error
from .errors import (
    BadBetaError,
    EntropyOutOfRangeError,
    NegativeEntropyError,
    OutOfRangeError,
    TooFewClassesError,
)
from .model import JointModel, PosteriorProfile, validate_joint

# Domain-edge slack for entropy arguments; beyond it the input is an error,
# within it the value is clamped onto the closed domain.
H_SLACK = 1e-12

# exp(H) lands next to an integer whenever H is near a knot ln m; snap
# before the ceiling so the branch index cannot jump off by one.
INTEGER_SNAP = 1e-9

BISECT_TOL = 1e-13
BISECT_MAX_ITER = 200


@dataclass(frozen=True)
class EntropyValue:
    """Shannon conditional entropy in nats, tagged with its class count."""

    h: float
    k: int

    def __post_init__(self):
        if self.k < 2:
            raise TooFewClassesError(f"need at least 2 classes, got k={self.k}")
        top = math.log(self.k)
        if self.h < -H_SLACK or self.h > top + H_SLACK:
            raise EntropyOutOfRangeError(f"h={self.h!r} outside [0, ln {self.k}]")
        object.__setattr__(self, "h", min(max(self.h, 0.0), top))


@dataclass(frozen=True)
class RenyiValue:
    """Renyi conditional entropy in bits at order beta."""

    h_beta: float
    beta: float


def _plogp(p: np.ndarray) -> np.ndarray:
    """p ln p elementwise with the 0 ln 0 = 0 convention."""
    out = np.zeros_like(p)
    mask = p > 0
    out[mask] = p[mask] * np.log(p[mask])
    return out


def conditional_entropy(model: JointModel) -> EntropyValue:
    """H(Y|X) in nats: marginal-weighted entropy of the column posteriors."""
    mu = model.w.sum(axis=0)
    live = mu > 0
    ratio = model.w[:, live] / mu[live]
    h = -float((mu[live] * _plogp(ratio).sum(axis=0)).sum())
    return EntropyValue(h=h, k=model.k)


def entropy_of_profile(profile: PosteriorProfile) -> EntropyValue:
    """Shannon entropy of one posterior profile, in nats."""
    return EntropyValue(h=-float(_plogp(profile.a).sum()), k=profile.k)


def _h2(p: float) -> float:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log(p) - (1.0 - p) * math.log1p(-p)


def phi(k: int, p: float) -> float:
    """p ln(k-1) + h2(p): strictly increasing from 0 to ln k on [0, 1-1/k]."""
    if k < 2:
        raise TooFewClassesError(f"need at least 2 classes, got k={k}")
    top = 1.0 - 1.0 / k
    if p < -H_SLACK or p > top + H_SLACK:
        raise OutOfRangeError(f"p={p!r} outside [0, {top}]")
    p = min(max(p, 0.0), top)
    return p * math.log(k - 1) + _h2(p)


def lower_fm(k: int, h: float) -> float:
    """Feder-Merhav lower bound: the unique p in [0, 1-1/k] with phi(p) = h.

    Plain bisection; phi is strictly increasing, so the bracket always
    halves onto the root.
    """
    if k < 2:
        raise TooFewClassesError(f"need at least 2 classes, got k={k}")
    top = math.log(k)
    if h < -H_SLACK or h > top + H_SLACK:
        raise EntropyOutOfRangeError(f"h={h!r} outside [0, ln {k}]")
    h = min(max(h, 0.0), top)
    if h == 0.0:
        return 0.0
    # phi is quadratically flat at its right endpoint, so inverting there
    # amplifies noise in h to sqrt scale; h this close to ln k means the
    # endpoint itself is the best-conditioned answer.
    if top - h <= H_SLACK:
        return 1.0 - 1.0 / k
    lo, hi = 0.0, 1.0 - 1.0 / k
    for _ in range(BISECT_MAX_ITER):
        if hi - lo <= BISECT_TOL:
            break
        mid = 0.5 * (lo + hi)
        if phi(k, mid) < h:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def upper_fm(h: float) -> float:
    """Feder-Merhav upper bound, piecewise linear in H with knots at ln m.

    On [ln m, ln(m+1)] the bound climbs from 1 - 1/m to 1 - 1/(m+1).  The
    branch index e = ceil(exp(H)) - 1 degenerates at H = 0; the value 0 is
    the continuity limit there and is what a zero-entropy model demands.

    Accepts h down to -INTEGER_SNAP so that probing continuity around the
    first knot (ln 1 = 0) stays legal.
    """
    if h < -INTEGER_SNAP:
        raise NegativeEntropyError(f"h={h!r} must be >= 0")
    h = max(h, 0.0)
    t = math.exp(h)
    nearest = round(t)
    if abs(t - nearest) <= INTEGER_SNAP:
        e = int(nearest) - 1
    else:
        e = math.ceil(t) - 1
    if e == 0:
        return 0.0
    slope_term = (h - math.log(e)) / math.log1p(1.0 / e)
    return (e - 1.0) / e + slope_term / (e * (e + 1.0))


def renyi_conditional_entropy(model: JointModel, beta: float) -> RenyiValue:
    """Order-beta Renyi entropy of the row variable given the column, in bits.

    Columns are the conditioning outcomes; each column's posterior over rows
    is collapsed by the order-beta power sum, then mixed by the column
    marginal.  beta = 1 is the Shannon limit, computed directly in bits.
    """
    if not beta > 0.0:
        raise BadBetaError(f"beta={beta!r} must be positive")
    mu = model.w.sum(axis=0)
    live = mu > 0
    ratio = model.w[:, live] / mu[live]
    if beta == 1.0:
        per_col = -(_plogp(ratio) / math.log(2.0)).sum(axis=0)
    else:
        power_sum = (ratio**beta).sum(axis=0)
        per_col = np.log2(power_sum) / (1.0 - beta)
    return RenyiValue(h_beta=float((mu[live] * per_col).sum()), beta=beta)


# --- two-class counterexample fixture ---------------------------------------


@dataclass(frozen=True)
class CounterexampleReport:
    """Evaluation of the claimed Renyi upper bound on its refuting fixture."""

    p_e: float
    h_beta: float
    h_s: float
    ep_numerator: float
    bound_false: bool
    checks: tuple

    @property
    def ok(self) -> bool:
        return all(passed for _, passed in self.checks)

    def to_dict(self) -> dict:
        return {
            "P_e": self.p_e,
            "H_beta": self.h_beta,
            "H_S": self.h_s,
            "ep_numerator": self.ep_numerator,
            "bound_false": self.bound_false,
            "checks": dict(self.checks),
        }


def ep_counterexample_check() -> CounterexampleReport:
    """Evaluate the fixture W = 1 surely, M uniform on {1, 2}, independent.

    Estimating M from W cannot beat coin-flipping, so the error is 1/2 and
    its binary entropy is 1 bit; yet W given M is deterministic, so every
    Renyi conditional entropy is 0.  The claimed upper bound's numerator
    H_beta - H_S(e) is then -1 < 0, which no probability can sit under.
    """
    w_rows = np.array([[0.5, 0.5], [0.0, 0.0]])
    renyi_model = validate_joint(w_rows)
    guess_model = validate_joint(w_rows.T)

    p_e = bayes_error(guess_model)
    h_betas = {b: renyi_conditional_entropy(renyi_model, b).h_beta for b in (0.5, 2.0, 5.0)}
    h_s = _h2(p_e) / math.log(2.0)
    h_beta = h_betas[2.0]
    numerator = h_beta - h_s

    checks = (
        ("error_is_half", abs(p_e - 0.5) <= 1e-12),
        ("renyi_all_zero", all(abs(v) <= 1e-12 for v in h_betas.values())),
        ("shannon_of_error_one_bit", abs(h_s - 1.0) <= 1e-12),
        ("numerator_negative", numerator < 0.0),
    )
    return CounterexampleReport(
        p_e=p_e,
        h_beta=h_beta,
        h_s=h_s,
        ep_numerator=numerator,
        bound_false=numerator < 0.0,
        checks=checks,
    )
