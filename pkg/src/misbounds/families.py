"""Parametric model families used by the sweeps and comparison scans.

Each constructor returns a posterior profile (sorted nonincreasing; every
downstream statistic is permutation-invariant) or, for the pure family, a
full joint model whose columns all share one profile up to relabeling.
"""

from __future__ import annotations

import math
import warnings

import numpy as np

from .errors import (
    BadParamError,
    BadPermutationError,
    BadWeightsError,
    OutOfDomainError,
    TooLargeError,
)
from .model import MASS_TOL, JointModel, PosteriorProfile, validate_profile

PROFILE_SIZE_LIMIT = 10**7


class DomainWarning(UserWarning):
    """Parameters are legal but outside a guarantee's proven range."""


def pure_model(profile: PosteriorProfile, weights, perms) -> JointModel:
    """Assemble a joint model whose every posterior is `profile` relabeled.

    Column x places weights[x] * a_i at row perms[x][i].  Permutations are
    1-based label sequences; weights must be strictly positive and sum to 1.
    """
    a = profile.a
    k = profile.k
    w_vec = np.asarray(weights, dtype=float)
    if w_vec.ndim != 1 or w_vec.size == 0:
        raise BadWeightsError(f"weights must be a nonempty vector, got shape {w_vec.shape}")
    if np.any(w_vec <= 0):
        raise BadWeightsError("weights must be strictly positive")
    if abs(float(w_vec.sum()) - 1.0) > MASS_TOL:
        raise BadWeightsError(f"weights sum to {float(w_vec.sum())!r}, must be 1")
    n = w_vec.size
    if len(perms) != n:
        raise BadPermutationError(f"need {n} permutations, got {len(perms)}")
    w = np.zeros((k, n))
    for x, perm in enumerate(perms):
        rows = np.asarray(perm, dtype=np.int64)
        if rows.shape != (k,) or set(rows.tolist()) != set(range(1, k + 1)):
            raise BadPermutationError(f"permutation {x + 1} is not a bijection on 1..{k}")
        w[rows - 1, x] = w_vec[x] * a
    return JointModel(w=w)


def binomial_profile(m: int, q: float) -> PosteriorProfile:
    """Profile of length 2^m: values (1-q)^j q^(m-j), each with multiplicity C(m, j)."""
    if not (isinstance(m, (int, np.integer)) and m >= 1):
        raise BadParamError(f"m={m!r} must be an integer >= 1")
    if not 0.0 < q < 1.0:
        raise BadParamError(f"q={q!r} must lie in (0, 1)")
    if 2**m > PROFILE_SIZE_LIMIT:
        raise TooLargeError(f"2^{m} entries exceeds limit {PROFILE_SIZE_LIMIT}")
    j = np.arange(m + 1)
    values = (1.0 - q) ** j * q ** (m - j)
    counts = [math.comb(m, int(jj)) for jj in j]
    a = np.repeat(values, counts)
    return PosteriorProfile(a=np.sort(a)[::-1].copy())


def exponential_profile(k: int, q: float) -> PosteriorProfile:
    """Profile a_i proportional to (1-q)^(i-1) q^(k-i), i = 1..k.

    The geometric-sum normalizer has the closed form
    ((1-q)^k - q^k) / (1-2q), but subtracting two nearly equal k-th powers
    loses most significant digits as q approaches 1/2, so a direct k-term
    sum takes over inside |1-2q| < 1e-4.
    """
    if not (isinstance(k, (int, np.integer)) and k >= 2):
        raise BadParamError(f"k={k!r} must be an integer >= 2")
    if not 0.0 < q < 1.0:
        raise BadParamError(f"q={q!r} must lie in (0, 1)")
    if k > PROFILE_SIZE_LIMIT:
        raise TooLargeError(f"k={k} exceeds limit {PROFILE_SIZE_LIMIT}")
    i = np.arange(1, k + 1, dtype=float)
    log_terms = (i - 1.0) * math.log1p(-q) + (k - i) * math.log(q)
    if float(log_terms.max()) < -690.0:
        # every raw term underflows; normalize in a shifted scale instead
        scaled = np.exp(log_terms - log_terms.max())
        a = scaled / scaled.sum()
    else:
        terms = (1.0 - q) ** (i - 1.0) * q ** (k - i)
        if q == 0.5:
            c = k * 2.0 ** (1 - k)
        elif abs(1.0 - 2.0 * q) >= 1e-4:
            c = ((1.0 - q) ** k - q**k) / (1.0 - 2.0 * q)
        else:
            c = float(terms.sum())
        a = terms / c
    return PosteriorProfile(a=np.sort(a)[::-1].copy())


def three_class_profile(p: float, eps: float) -> PosteriorProfile:
    """Three-class profile (1-p, p-eps, eps); its pure model has Bayes error p."""
    slack = 1e-12
    if not -slack <= p <= 2.0 / 3.0 + slack:
        raise OutOfDomainError(f"p={p!r} outside [0, 2/3]")
    lo = max(2.0 * p - 1.0, 0.0)
    hi = p / 2.0
    if not lo - slack <= eps <= hi + slack:
        raise OutOfDomainError(f"eps={eps!r} outside [{lo}, {hi}] for p={p}")
    eps = min(max(eps, lo), hi)
    return PosteriorProfile(a=np.array([1.0 - p, p - eps, eps]))


# Support sizes for which the entropy-vs-separation advantage below is
# actually guaranteed; anything else is well-defined but unproven.
def _comp_lo_guaranteed(k: int) -> set:
    ells = {k - 3, k - 2, k - 1}
    if 6 <= k <= 9:
        ells.add(k - 4)
    return {e for e in ells if e >= 2}


def comp_lo_profile(k: int, ell: int) -> PosteriorProfile:
    """Uniform profile on the first `ell` of k classes: ell entries 1/ell, then 0."""
    if not (isinstance(k, (int, np.integer)) and k >= 3):
        raise BadParamError(f"k={k!r} must be an integer >= 3")
    if not (isinstance(ell, (int, np.integer)) and 2 <= ell <= k):
        raise BadParamError(f"ell={ell!r} must be an integer in 2..{k}")
    if ell not in _comp_lo_guaranteed(k):
        warnings.warn(
            f"ell={ell} is outside the guaranteed set for k={k}; "
            "the profile is valid but the lower-bound advantage is unproven",
            DomainWarning,
            stacklevel=2,
        )
    a = np.zeros(k)
    a[:ell] = 1.0 / ell
    return PosteriorProfile(a=a)


def comp_hi_profile(k: int, nu: float) -> PosteriorProfile:
    """One dominant entry 1-(nu-1)/k over a flat tail; separation k - nu."""
    if not nu > 1.0:
        raise BadParamError(f"nu={nu!r} must exceed 1")
    if not (isinstance(k, (int, np.integer)) and k > nu):
        raise BadParamError(f"k={k!r} must be an integer > nu={nu}")
    a = np.full(k, (nu - 1.0) / (k * (k - 1.0)))
    a[0] = 1.0 - (nu - 1.0) / k
    return PosteriorProfile(a=a)


def comp_hi_stats(k: int, nu: float) -> dict:
    """Closed-form separation, entropy, and Bayes error of comp_hi_profile.

    O(1) regardless of k, which keeps crossover scans over k up to 10^4
    cheap; values match the constructed profile to float accuracy.
    """
    if not nu > 1.0:
        raise BadParamError(f"nu={nu!r} must exceed 1")
    if not k > nu:
        raise BadParamError(f"k={k!r} must exceed nu={nu}")
    top = 1.0 - (nu - 1.0) / k
    tail = (nu - 1.0) / (k * (k - 1.0))
    h = 0.0
    if top > 0.0:
        h -= top * math.log(top)
    if tail > 0.0:
        h -= (k - 1.0) * tail * math.log(tail)
    return {"delta": k - nu, "entropy_nats": h, "p_star": (nu - 1.0) / k}


def qpsk_q(eb_n0: float) -> float:
    """Crossover probability of a coherent QPSK symbol decision at E_b/N_0.

    Standard normal tail at sqrt(2 * E_b/N_0), via the complementary error
    function: Q(x) = erfc(x / sqrt 2) / 2.
    """
    if not eb_n0 > 0.0:
        raise BadParamError(f"eb_n0={eb_n0!r} must be positive")
    x = math.sqrt(2.0 * eb_n0)
    return 0.5 * math.erfc(x / math.sqrt(2.0))


def from_spec(spec: dict):
    """Build a profile (or pure-family model) from a JSON-style mapping.

    Expects {"family": name, ...parameters}; unknown families or missing
    parameters raise BadParam.
    """
    if not isinstance(spec, dict) or "family" not in spec:
        raise BadParamError("family spec must be a mapping with a 'family' key")
    family = spec["family"]
    params = {key: value for key, value in spec.items() if key != "family"}
    try:
        if family == "pure":
            return pure_model(
                validate_profile(params.pop("a")),
                params.pop("weights"),
                params.pop("perms"),
            )
        if family == "binomial":
            return binomial_profile(int(params.pop("m")), float(params.pop("q")))
        if family == "exponential":
            return exponential_profile(int(params.pop("k")), float(params.pop("q")))
        if family == "three_class":
            return three_class_profile(float(params.pop("p")), float(params.pop("eps")))
        if family == "comp_lo":
            return comp_lo_profile(int(params.pop("k")), int(params.pop("ell")))
        if family == "comp_hi":
            return comp_hi_profile(int(params.pop("k")), float(params.pop("nu")))
    except KeyError as exc:
        raise BadParamError(f"family {family!r} is missing parameter {exc.args[0]!r}") from exc
    raise BadParamError(f"unknown family {family!r}")
