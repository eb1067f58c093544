"""Bound evaluation reports, figure sweeps, comparison scans, verify suites.

Everything here composes the other modules and is responsible for one extra
duty: no row leaves this layer unless the sandwich chains hold on it, so a
CSV produced by the CLI is itself a certificate.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .bayes import bayes_error, brute_force_bayes_error
from .entropy import (
    conditional_entropy,
    entropy_of_profile,
    ep_counterexample_check,
    lower_fm,
    phi,
    upper_fm,
)
from .errors import BadParamError, InvariantViolationError
from .families import (
    binomial_profile,
    comp_hi_stats,
    exponential_profile,
    three_class_profile,
    _comp_lo_guaranteed,
)
from .model import JointModel, PosteriorProfile, validate_joint
from .tv_bounds import (
    delta,
    delta_of_profile,
    lower_bound,
    simplex_grid_oracle,
    upper_bound,
    upper_bound_simpl,
    extremal_high_profile,
    extremal_low_profile,
)

CHAIN_SLACK = 1e-11

# Limit of the scaled ell = k-3 margin as k grows.
COMP_LO_LIMIT = 6.0 - 8.0 * math.log(2.0)


def log10_or_none(value: float):
    """log10 for positive values; nonpositive ones have no finite log."""
    return math.log10(value) if value > 0.0 else None


@dataclass(frozen=True)
class BoundsReport:
    """All bound values for one model or profile, checked on construction."""

    k: int
    delta: float
    entropy_nats: float
    p_star: float
    L: float
    U: float
    U_simpl: float
    L_FM: float
    U_FM: float

    def __post_init__(self):
        chain = (
            ("L <= p_star", self.p_star - self.L),
            ("p_star <= U", self.U - self.p_star),
            ("U <= U_simpl", self.U_simpl - self.U),
            ("L_FM <= p_star", self.p_star - self.L_FM),
            ("p_star <= U_FM", self.U_FM - self.p_star),
        )
        for name, slack in chain:
            if slack < -CHAIN_SLACK:
                raise InvariantViolationError(f"{name} violated by {-slack:.3e}")

    @classmethod
    def from_model(cls, model: JointModel) -> "BoundsReport":
        dv = delta(model)
        h = conditional_entropy(model)
        return cls(
            k=model.k,
            delta=dv.delta,
            entropy_nats=h.h,
            p_star=bayes_error(model),
            L=lower_bound(model.k, dv.delta),
            U=upper_bound(model.k, dv.delta),
            U_simpl=upper_bound_simpl(model.k, dv.delta),
            L_FM=lower_fm(model.k, h.h),
            U_FM=upper_fm(h.h),
        )

    @classmethod
    def from_profile(cls, profile: PosteriorProfile) -> "BoundsReport":
        k = profile.k
        dv = delta_of_profile(profile)
        h = entropy_of_profile(profile)
        return cls(
            k=k,
            delta=dv.delta,
            entropy_nats=h.h,
            p_star=1.0 - float(profile.a.max()),
            L=lower_bound(k, dv.delta),
            U=upper_bound(k, dv.delta),
            U_simpl=upper_bound_simpl(k, dv.delta),
            L_FM=lower_fm(k, h.h),
            U_FM=upper_fm(h.h),
        )

    def as_dict(self) -> dict:
        out = {
            "k": self.k,
            "delta": self.delta,
            "entropy_nats": self.entropy_nats,
            "p_star": self.p_star,
            "L": self.L,
            "U": self.U,
            "U_simpl": self.U_simpl,
            "L_FM": self.L_FM,
            "U_FM": self.U_FM,
        }
        for name in ("p_star", "L", "U", "U_simpl", "L_FM", "U_FM"):
            out[f"log10_{name}"] = log10_or_none(getattr(self, name))
        return out


# --- figure sweeps ----------------------------------------------------------


def _grid(lo: float, hi: float, step: float) -> np.ndarray:
    """Inclusive grid from lo to hi; lands exactly on hi when step divides."""
    count = round((hi - lo) / step)
    if count >= 1 and abs(lo + count * step - hi) <= 1e-9:
        return np.linspace(lo, hi, count + 1)
    pts = np.arange(lo, hi, step)
    return np.append(pts, hi)


def fig1_rows(k: int, delta_step: float = 0.01) -> list:
    """Bound curves (L, U, U_simpl) over the full separation range [0, k-1]."""
    if delta_step <= 0:
        raise BadParamError(f"delta_step={delta_step!r} must be positive")
    rows = []
    for d in _grid(0.0, float(k - 1), delta_step):
        d = float(d)
        L = lower_bound(k, d)
        U = upper_bound(k, d)
        U_s = upper_bound_simpl(k, d)
        if not (L <= U + CHAIN_SLACK and U <= U_s + CHAIN_SLACK):
            raise InvariantViolationError(f"bound chain broken at delta={d}")
        rows.append({"delta": d, "L": L, "U": U, "U_simpl": U_s})
    return rows


FIG2_DEFAULT_P = (0.01, 0.1, 0.3, 0.5, 0.6, 0.64)
FIG2_POINTS = 101


def fig2_rows(p_list=FIG2_DEFAULT_P, points: int = FIG2_POINTS) -> list:
    """Three-class log-scale sweep: for each target error p, scan feasible eps."""
    if points < 1:
        raise BadParamError(f"points={points!r} must be >= 1")
    rows = []
    for p in p_list:
        lo = max(2.0 * p - 1.0, 0.0)
        hi = p / 2.0
        # at p = 2/3 the feasible range collapses to a point (up to round-off)
        eps_grid = [0.5 * (lo + hi)] if hi - lo <= 1e-12 else np.linspace(lo, hi, points)
        for eps in eps_grid:
            rep = BoundsReport.from_profile(three_class_profile(float(p), float(eps)))
            rows.append(
                {
                    "p": float(p),
                    "eps": float(eps),
                    "log10_L": log10_or_none(rep.L),
                    "log10_U": log10_or_none(rep.U),
                    "log10_U_simpl": log10_or_none(rep.U_simpl),
                    "log10_L_FM": log10_or_none(rep.L_FM),
                    "log10_U_FM": log10_or_none(rep.U_FM),
                    "log10_p_star": log10_or_none(rep.p_star),
                }
            )
    return rows


FIG3_DEFAULT_K = (2, 4, 8)


def fig3_rows(k_list=FIG3_DEFAULT_K, q_step: float = 0.005) -> list:
    """Binomial and geometric-profile bound sweeps over q in (0, 1/2]."""
    if not 0.0 < q_step <= 0.5:
        raise BadParamError(f"q_step={q_step!r} must lie in (0, 0.5]")
    q_grid = _grid(q_step, 0.5, q_step)
    rows = []
    for family in ("binomial", "exponential"):
        for k in k_list:
            if family == "binomial":
                m = int(round(math.log2(k)))
                if 2**m != k:
                    raise BadParamError(f"binomial family needs k a power of 2, got {k}")
            for q in q_grid:
                q = float(q)
                if family == "binomial":
                    profile = binomial_profile(m, q)
                else:
                    profile = exponential_profile(int(k), q)
                rep = BoundsReport.from_profile(profile)
                full = rep.as_dict()
                row = {"family": family, "k": int(k), "q": q}
                for key in ("delta", "entropy_nats", "p_star", "L", "U", "U_simpl", "L_FM", "U_FM"):
                    row[key] = full[key]
                rows.append(row)
    return rows


# --- comparison scans -------------------------------------------------------


def d_lower_margin(k: int, ell: int) -> float:
    """Signed margin of the separation lower bound over the entropy one.

    For the flat ell-of-k profile the separation bound is (ell-1)/k while
    the entropy bound inverts phi at ln ell, so positivity of
    phi(k, (ell-1)/k) - ln ell is exactly the advantage claim.
    """
    return phi(k, (ell - 1) / k) - math.log(ell)


def compare_lo_rows(k_max: int = 50, k_min: int = 3) -> list:
    """Margins d_k(ell) over every guaranteed (k, ell); all must be positive."""
    if k_min < 3 or k_max < k_min:
        raise BadParamError(f"need 3 <= k_min <= k_max, got {k_min}..{k_max}")
    rows = []
    for k in range(k_min, k_max + 1):
        for ell in sorted(_comp_lo_guaranteed(k)):
            d = d_lower_margin(k, ell)
            if not d > 0.0:
                raise InvariantViolationError(f"d_{k}({ell}) = {d!r} is not positive")
            row = {"k": k, "ell": ell, "d": d}
            if ell == k - 3:
                row["k_times_d"] = k * d
                row["k_times_d_limit"] = COMP_LO_LIMIT
            else:
                row["k_times_d"] = None
                row["k_times_d_limit"] = None
            rows.append(row)
    return rows


@dataclass(frozen=True)
class CompareHiScan:
    """Scan of the dominant-entry family for where U(delta) beats U_FM(H)."""

    nu: float
    k_max: int
    crossover_k: int | None
    rows: tuple

    def as_dict(self) -> dict:
        return {
            "nu": self.nu,
            "k_max": self.k_max,
            "crossover_k": self.crossover_k,
            "rows": list(self.rows),
        }


def compare_hi_scan(nu: float, k_max: int) -> CompareHiScan:
    """Evaluate U(delta) vs U_FM(H) on the dominant-entry family for each k.

    U(delta) stays at or above 1 - 1/floor(nu) while U_FM(H) decays to 0 as
    k grows, so a crossover must appear; the scan reports the first k where
    it does.  Entropy and separation come from closed forms, keeping the
    scan O(k_max).
    """
    if not nu > 1.0:
        raise BadParamError(f"nu={nu!r} must exceed 1")
    k_start = math.floor(nu) + 1
    if k_start <= nu:
        k_start += 1
    if k_max < k_start:
        raise BadParamError(f"k_max={k_max} leaves no k > nu={nu}")
    rows = []
    crossover = None
    for k in range(k_start, k_max + 1):
        stats = comp_hi_stats(k, nu)
        U = upper_bound(k, stats["delta"])
        U_fm = upper_fm(stats["entropy_nats"])
        exceeds = U > U_fm
        if exceeds and crossover is None:
            crossover = k
        rows.append(
            {
                "k": k,
                "delta": stats["delta"],
                "entropy_nats": stats["entropy_nats"],
                "U": U,
                "U_FM": U_fm,
                "U_exceeds_U_FM": exceeds,
            }
        )
    if nu == 2.0 and k_max >= 10**4 and crossover is None:
        raise InvariantViolationError(
            f"no k <= {k_max} with U > U_FM at nu=2; expected one to exist"
        )
    return CompareHiScan(nu=nu, k_max=k_max, crossover_k=crossover, rows=tuple(rows))


# --- verify suites ----------------------------------------------------------


def random_model(rng: np.random.Generator, k: int, n: int) -> JointModel:
    """Uniform positive entries, normalized to unit mass."""
    w = rng.random((k, n))
    return validate_joint(w / w.sum())


def verify_sandwich(count: int = 10000, seed: int = 0) -> dict:
    """Both bound chains on random models; reports the worst slack seen."""
    rng = np.random.default_rng(seed)
    worst = math.inf
    worst_site = None
    for _ in range(count):
        k = int(rng.integers(2, 9))
        n = int(rng.integers(1, 7))
        rep = BoundsReport.from_model(random_model(rng, k, n))
        for name, slack in (
            ("L<=p*", rep.p_star - rep.L),
            ("p*<=U", rep.U - rep.p_star),
            ("U<=U_simpl", rep.U_simpl - rep.U),
            ("L_FM<=p*", rep.p_star - rep.L_FM),
            ("p*<=U_FM", rep.U_FM - rep.p_star),
        ):
            if slack < worst:
                worst = slack
                worst_site = name
    return {
        "suite": "sandwich",
        "checked": count,
        "worst_slack": worst,
        "worst_site": worst_site,
        "ok": worst >= -CHAIN_SLACK,
    }


def verify_oracle(pairs=((2, 50), (3, 30), (4, 15))) -> dict:
    """Exact-rational simplex grids; zero violations required."""
    reports = [simplex_grid_oracle(k, N) for k, N in pairs]
    return {
        "suite": "oracle",
        "checked": sum(r.checked for r in reports),
        "violations": sum(len(r.violations) for r in reports),
        "grids": [
            {"k": r.k, "N": r.N, "checked": r.checked, "violations": len(r.violations)}
            for r in reports
        ],
        "ok": all(r.ok for r in reports),
    }


def verify_extremal(k_values=range(2, 9), step: float = 0.01) -> dict:
    """Extremal profiles must reproduce their target separation and bound."""
    worst = 0.0
    checked = 0
    for k in k_values:
        for d in _grid(0.0, float(k - 1), step):
            d = float(d)
            low = extremal_low_profile(k, d)
            high = extremal_high_profile(k, d)
            worst = max(
                worst,
                abs(delta_of_profile(low).delta - d),
                abs(delta_of_profile(high).delta - d),
                abs((1.0 - float(low.a.max())) - lower_bound(k, d)),
                abs((1.0 - float(high.a.max())) - upper_bound(k, d)),
            )
            checked += 2
    return {"suite": "extremal", "checked": checked, "worst_error": worst, "ok": worst <= 1e-12}


def verify_brute_force(count: int = 300, seed: int = 0) -> dict:
    """Closed-form Bayes error against exhaustive classifier enumeration."""
    rng = np.random.default_rng(seed)
    pairs = [(k, n) for k in range(2, 9) for n in range(1, 7) if k**n <= 10**5]
    worst = 0.0
    for _ in range(count):
        k, n = pairs[int(rng.integers(len(pairs)))]
        model = random_model(rng, k, n)
        worst = max(worst, abs(brute_force_bayes_error(model) - bayes_error(model)))
    return {"suite": "brute_force", "checked": count, "worst_error": worst, "ok": worst <= 1e-12}


def verify_counterexample() -> dict:
    """The published fixture must refute the claimed entropy upper bound."""
    rep = ep_counterexample_check()
    out = rep.to_dict()
    out["suite"] = "counterexample"
    out["ok"] = rep.ok and rep.bound_false
    return out


VERIFY_SUITES = {
    "sandwich": verify_sandwich,
    "oracle": verify_oracle,
    "extremal": verify_extremal,
    "brute_force": verify_brute_force,
    "counterexample": verify_counterexample,
}


def run_verify(suites=None, seed: int = 0, sandwich_count: int = 10000, brute_count: int = 300) -> list:
    """Run the named suites (all by default) and return their result dicts."""
    names = list(VERIFY_SUITES) if suites is None else list(suites)
    results = []
    for name in names:
        if name not in VERIFY_SUITES:
            raise BadParamError(f"unknown verify suite {name!r}")
        if name == "sandwich":
            results.append(verify_sandwich(count=sandwich_count, seed=seed))
        elif name == "brute_force":
            results.append(verify_brute_force(count=brute_count, seed=seed))
        else:
            results.append(VERIFY_SUITES[name]())
    return results


# --- serialization ----------------------------------------------------------


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def rows_to_csv(rows: list, header_comments=()) -> str:
    """Render dict rows as CSV; column order follows the first row's keys."""
    if not rows:
        return "\n".join(f"# {c}" for c in header_comments) + "\n" if header_comments else ""
    columns = list(rows[0].keys())
    lines = [f"# {c}" for c in header_comments]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_cell(row.get(col)) for col in columns))
    return "\n".join(lines) + "\n"


def rows_to_json(rows: list) -> str:
    return json.dumps(rows, indent=2) + "\n"
