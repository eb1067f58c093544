"""Finite discrete joint models of a label Y in {1..k} and an observation X in {1..n}.

A model stores the k x n matrix w with w[y-1, x-1] = P(Y = y, X = x).  The
column sums form the marginal distribution of X, and each column with
positive mass normalizes to the posterior profile of Y given that
observation.  Everything here is immutable and purely functional.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    MassNotOneError,
    NegativeEntryError,
    ParseError,
    TooFewClassesError,
    ZeroMarginalError,
)

# Input mass tolerance: sums within MASS_TOL of 1 are accepted and
# renormalized; deviations inside NO_TOUCH are left untouched so that
# validation is idempotent bit-for-bit.
MASS_TOL = 1e-9
NO_TOUCH = 1e-13


@dataclass(frozen=True)
class JointModel:
    """Validated k x n joint probability matrix, entries P(Y=y, X=x)."""

    w: np.ndarray

    def __post_init__(self):
        self.w.setflags(write=False)

    @property
    def k(self) -> int:
        """Number of classes (rows)."""
        return self.w.shape[0]

    @property
    def n(self) -> int:
        """Number of observations (columns)."""
        return self.w.shape[1]


@dataclass(frozen=True)
class PosteriorProfile:
    """Length-k nonnegative vector summing to 1 (a posterior over classes)."""

    a: np.ndarray

    def __post_init__(self):
        self.a.setflags(write=False)

    @property
    def k(self) -> int:
        return self.a.shape[0]


def _normalize_mass(arr: np.ndarray, total: float) -> np.ndarray:
    """Renormalize to unit mass unless already inside the no-touch zone."""
    if abs(total - 1.0) <= NO_TOUCH:
        return arr
    return arr / total


def validate_joint(raw) -> JointModel:
    """Validate a k x n matrix of joint probabilities and wrap it as a model.

    Entries must be nonnegative, there must be at least two rows, and the
    total mass must be 1 within ``MASS_TOL`` (small deviations are fixed by
    renormalization, which tolerates decimal-text round-off without hiding
    genuine input errors).
    """
    w = np.asarray(raw, dtype=float)
    if w.ndim != 2 or w.size == 0:
        raise ParseError(f"expected a nonempty 2-D matrix, got shape {w.shape}")
    if w.shape[0] < 2:
        raise TooFewClassesError(f"need at least 2 classes, got k={w.shape[0]}")
    if np.any(w < 0) or np.any(np.isnan(w)):
        y, x = np.argwhere((w < 0) | np.isnan(w))[0]
        raise NegativeEntryError(
            f"entry at row {y + 1}, col {x + 1} is {w[y, x]!r}; entries must be >= 0"
        )
    total = float(w.sum())
    if abs(total - 1.0) > MASS_TOL:
        raise MassNotOneError(f"total mass is {total!r}, must be 1 within {MASS_TOL}")
    return JointModel(w=np.array(_normalize_mass(w, total)))


def validate_profile(raw) -> PosteriorProfile:
    """Validate a length-k nonnegative vector summing to 1 within tolerance."""
    a = np.asarray(raw, dtype=float)
    if a.ndim != 1 or a.size == 0:
        raise ParseError(f"expected a nonempty 1-D vector, got shape {a.shape}")
    if np.any(a < 0) or np.any(np.isnan(a)):
        i = int(np.flatnonzero((a < 0) | np.isnan(a))[0])
        raise NegativeEntryError(f"entry {i + 1} is {a[i]!r}; entries must be >= 0")
    total = float(a.sum())
    if abs(total - 1.0) > MASS_TOL:
        raise MassNotOneError(f"entries sum to {total!r}, must be 1 within {MASS_TOL}")
    return PosteriorProfile(a=np.array(_normalize_mass(a, total)))


def marginal(model: JointModel) -> np.ndarray:
    """Distribution of X: column sums of the joint matrix."""
    return model.w.sum(axis=0)


def posterior(model: JointModel, x: int) -> PosteriorProfile:
    """Posterior profile of Y given observation x (1-based).

    Raises ZeroMarginalError when the observation carries no mass; such
    columns are legal in a model but have no well-defined posterior, so
    callers must skip them.
    """
    if not 1 <= x <= model.n:
        raise IndexError(f"observation index {x} outside 1..{model.n}")
    col = model.w[:, x - 1]
    mu_x = float(col.sum())
    if mu_x == 0.0:
        raise ZeroMarginalError(f"observation {x} has zero marginal mass")
    return PosteriorProfile(a=col / mu_x)


# --- file I/O -------------------------------------------------------------
#
# CSV layout: k rows x n columns of decimals, '#' lines are comments.
# JSON layout: {"k": ..., "n": ..., "w": [[...], ...]}.
# Floats are written with repr() so save -> load round-trips exactly.


def _infer_format(path: Path, fmt: str | None) -> str:
    if fmt is not None:
        return fmt
    return "json" if path.suffix.lower() == ".json" else "csv"


def load_model(path, fmt: str | None = None) -> JointModel:
    """Load and validate a model from a CSV or JSON file."""
    path = Path(path)
    fmt = _infer_format(path, fmt)
    text = path.read_text()
    if fmt == "json":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in {path}: {exc}") from exc
        if not isinstance(doc, dict) or "w" not in doc:
            raise ParseError(f"{path}: JSON model must be an object with a 'w' field")
        rows = doc["w"]
        if "k" in doc and len(rows) != doc["k"]:
            raise ParseError(f"{path}: 'k'={doc['k']} but 'w' has {len(rows)} rows")
        if "n" in doc and rows and len(rows[0]) != doc["n"]:
            raise ParseError(f"{path}: 'n'={doc['n']} but rows have {len(rows[0])} columns")
        return validate_joint(rows)

    rows: list[list[float]] = []
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        cells = [c.strip() for c in stripped.split(",")]
        parsed = []
        for colno, cell in enumerate(cells, start=1):
            try:
                parsed.append(float(cell))
            except ValueError:
                raise ParseError(f"{path}: cannot parse {cell!r}", row=lineno, col=colno)
        if width is None:
            width = len(parsed)
        elif len(parsed) != width:
            raise ParseError(
                f"{path}: ragged row, expected {width} columns got {len(parsed)}",
                row=lineno,
            )
        rows.append(parsed)
    if not rows:
        raise ParseError(f"{path}: no data rows")
    return validate_joint(rows)


def save_model(model: JointModel, path, fmt: str | None = None) -> None:
    """Write a model to CSV or JSON at full precision."""
    path = Path(path)
    fmt = _infer_format(path, fmt)
    if fmt == "json":
        doc = {"k": model.k, "n": model.n, "w": [[float(v) for v in row] for row in model.w]}
        path.write_text(json.dumps(doc, indent=None, separators=(",", ":")) + "\n")
    else:
        lines = [",".join(repr(float(v)) for v in row) for row in model.w]
        path.write_text("\n".join(lines) + "\n")
