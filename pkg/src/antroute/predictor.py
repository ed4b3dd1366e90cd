"""Surrogate models recommending (alpha, beta) from roadmap features.

Two bundled order-6 bivariate series map the features (x = node density,
y = min-arc stddev) to parameter recommendations: a Chebyshev-basis fit
for alpha evaluated on (x, ln y), and a sigmoid-basis fit for beta
evaluated on (x, y). Both scale their inputs linearly to [-1, 1] first.

A series has 28 terms: one per (x-power, y-power) pair with total degree
0..6, ordered by degree and, within a degree, by descending x-power. The
coefficient for term k is named by COEFFICIENT_NAMES[k] (a..v, then
aa..af). Inputs outside the scaling intervals are clamped and flagged
rather than rejected, so sweeps over arbitrary feature ranges stay total.

The bundled tables carry no scaling intervals of their own, so defaults
stand in. The default x interval (250, 350) covers the city counts of
the corpus-study roadmaps, whose 200-square-unit placement area makes
node density coincide with city count. The default y interval brackets
the min-arc stddev measured over those corpora, ~[0.196, 0.272],
rounded outward to (0.15, 0.30) (the alpha model applies it in log
space). All scalings are configurable per model and every evaluation
reports the scaling it used.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field

from .roadmap import RoadmapFeatures

CHEBYSHEV = "chebyshev"
SIGMOID = "sigmoid"

ORDER = 6

COEFFICIENT_NAMES = (
    "a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l", "m", "n",
    "o", "p", "q", "r", "s", "t", "u", "v", "aa", "ab", "ac", "ad", "ae", "af",
)

# (x-power, y-power) of each term, matching COEFFICIENT_NAMES positionally.
TERM_POWERS = tuple(
    (px, degree - px) for degree in range(ORDER + 1) for px in range(degree, -1, -1)
)

DEFAULT_X_SCALING = (250.0, 350.0)
DEFAULT_Y_RANGE = (0.15, 0.30)


def chebyshev_basis(n: int, xp: float) -> float:
    """T_n(xp) = cos(n arccos(xp)) for xp in [-1, 1], 0 <= n <= 6."""
    if not 0 <= n <= ORDER:
        raise ValueError(f"basis degree must be in 0..{ORDER}, got {n}")
    if not -1.0 <= xp <= 1.0:
        raise ValueError(f"argument must be in [-1, 1], got {xp}")
    return math.cos(n * math.acos(xp))


def sigmoid_basis(i: int, n: int, xp: float) -> float:
    """Member i of an n-member sigmoid family on [-1, 1].

    S_1 is the identity; S_2..S_n are logistic steps with slope 0.12
    centered at evenly spaced points of [-1, 1].
    """
    if not 1 <= i <= n:
        raise ValueError(f"basis index must be in 1..{n}, got {i}")
    if i == 1:
        return xp
    return -1.0 + 2.0 / (1.0 + math.exp(-(xp + 1.0 - (i - 1) * (2.0 / n)) / 0.12))


@dataclass(frozen=True)
class FitModel:
    """One fitted series: basis kind, named coefficients, input scalings.

    ``y_scaling`` bounds the value the series actually sees: raw y for the
    sigmoid basis, ln(y) for the Chebyshev basis.
    """

    basis: str
    coefficients: dict[str, float]
    x_scaling: tuple[float, float] = DEFAULT_X_SCALING
    y_scaling: tuple[float, float] = DEFAULT_Y_RANGE
    order: int = ORDER

    def __post_init__(self):
        if self.basis not in (CHEBYSHEV, SIGMOID):
            raise ValueError(f"unknown basis {self.basis!r}")
        if self.order != ORDER:
            raise ValueError(f"only order {ORDER} is supported, got {self.order}")
        have = set(self.coefficients)
        want = set(COEFFICIENT_NAMES)
        if have != want:
            missing = sorted(want - have)
            extra = sorted(have - want)
            raise ValueError(
                f"coefficient table mismatch: missing {missing}, unexpected {extra}"
            )
        for lo, hi in (self.x_scaling, self.y_scaling):
            if not lo < hi:
                raise ValueError(f"scaling interval must have lo < hi, got ({lo}, {hi})")


@dataclass(frozen=True)
class FitEvaluation:
    """Model output plus whether either raw input was clamped into domain."""

    value: float
    x_clamped: bool
    y_clamped: bool
    x_scaling: tuple[float, float]
    y_scaling: tuple[float, float]

    @property
    def out_of_domain(self) -> bool:
        return self.x_clamped or self.y_clamped


def _clamp(u: float, lo: float, hi: float) -> tuple[float, bool]:
    if u < lo:
        return lo, True
    if u > hi:
        return hi, True
    return u, False


def _basis_row(model: FitModel, xp: float) -> list[float]:
    row = [1.0]
    if model.basis == CHEBYSHEV:
        row.extend(chebyshev_basis(n, xp) for n in range(1, ORDER + 1))
    else:
        row.extend(sigmoid_basis(i, ORDER, xp) for i in range(1, ORDER + 1))
    return row


def evaluate_fit(model: FitModel, x: float, y: float) -> FitEvaluation:
    """Evaluate the series at raw features (x, y).

    Inputs are clamped into the scaling intervals (in log space for the
    Chebyshev model's y) and the evaluation flags any clamping. y <= 0 is
    rejected for the Chebyshev model, where ln(y) is undefined.
    """
    ux = float(x)
    if model.basis == CHEBYSHEV:
        if y <= 0:
            raise ValueError(f"the log-input model needs y > 0, got {y}")
        uy = math.log(y)
    else:
        uy = float(y)
    x_lo, x_hi = model.x_scaling
    y_lo, y_hi = model.y_scaling
    ux, x_clamped = _clamp(ux, x_lo, x_hi)
    uy, y_clamped = _clamp(uy, y_lo, y_hi)
    xp = -1.0 + 2.0 * (ux - x_lo) / (x_hi - x_lo)
    yp = -1.0 + 2.0 * (uy - y_lo) / (y_hi - y_lo)

    bx = _basis_row(model, xp)
    by = _basis_row(model, yp)
    total = 0.0
    for name, (px, py) in zip(COEFFICIENT_NAMES, TERM_POWERS):
        total += model.coefficients[name] * bx[px] * by[py]
    return FitEvaluation(total, x_clamped, y_clamped, model.x_scaling, model.y_scaling)


@dataclass(frozen=True)
class Recommendation:
    """Recommended (alpha, beta) with the per-model evaluation details."""

    alpha: float
    beta: float
    alpha_eval: FitEvaluation
    beta_eval: FitEvaluation

    @property
    def flags(self) -> tuple[str, ...]:
        out = []
        for label, ev in (("alpha", self.alpha_eval), ("beta", self.beta_eval)):
            if ev.x_clamped:
                out.append(f"{label}_x_clamped")
            if ev.y_clamped:
                out.append(f"{label}_y_clamped")
        return tuple(out)

    @property
    def out_of_domain(self) -> bool:
        return bool(self.flags)


def recommend_parameters(
    features: RoadmapFeatures,
    alpha_model: FitModel | None = None,
    beta_model: FitModel | None = None,
) -> Recommendation:
    """Recommend (alpha, beta) for a roadmap's features.

    x is the node density (nodes per 200 square units; equal to the city
    count on a 200-square-unit map) and y the min-arc stddev.
    """
    am = alpha_model if alpha_model is not None else ALPHA_MODEL
    bm = beta_model if beta_model is not None else BETA_MODEL
    a = evaluate_fit(am, features.node_density, features.min_arc_stddev)
    b = evaluate_fit(bm, features.node_density, features.min_arc_stddev)
    return Recommendation(a.value, b.value, a, b)


def table_checksum(model: FitModel) -> str:
    """SHA-256 over the coefficient table in canonical order.

    Locks the bundled tables against accidental edits; tests pin the hex
    digests.
    """
    text = "\n".join(f"{name}={model.coefficients[name]!r}" for name in COEFFICIENT_NAMES)
    return hashlib.sha256(text.encode("ascii")).hexdigest()


def load_fit_model(
    path,
    basis: str,
    x_scaling: tuple[float, float] = DEFAULT_X_SCALING,
    y_scaling: tuple[float, float] | None = None,
) -> FitModel:
    """Read a coefficient table (name=value per line) into a FitModel.

    Blank lines and # comments are ignored. Exactly the 28 canonical
    names must appear once each. ``y_scaling`` defaults to the bundled
    interval for the basis (log-space for Chebyshev).
    """
    coefficients: dict[str, float] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            if "=" not in text:
                raise ValueError(f"{path}: line {line_no}: expected name=value")
            name, _, value = text.partition("=")
            name = name.strip()
            if name not in COEFFICIENT_NAMES:
                raise ValueError(f"{path}: line {line_no}: unknown coefficient {name!r}")
            if name in coefficients:
                raise ValueError(f"{path}: line {line_no}: duplicate coefficient {name!r}")
            try:
                coefficients[name] = float(value)
            except ValueError:
                raise ValueError(
                    f"{path}: line {line_no}: non-numeric value {value.strip()!r}"
                ) from None
    if y_scaling is None:
        y_scaling = _default_y_scaling(basis)
    return FitModel(basis, coefficients, x_scaling, y_scaling)


def _default_y_scaling(basis: str) -> tuple[float, float]:
    lo, hi = DEFAULT_Y_RANGE
    if basis == CHEBYSHEV:
        return (math.log(lo), math.log(hi))
    return (lo, hi)


ALPHA_MODEL = FitModel(
    basis=CHEBYSHEV,
    coefficients={
        "a": 2.094, "b": -5.892, "c": -3.756, "d": 1.813, "e": -8.864,
        "f": 1.257, "g": 0.697, "h": 2.269, "i": 2.720, "j": 0.1556,
        "k": 0.9132, "l": 1.722, "m": -1.423, "n": 0.232, "o": 0.743,
        "p": 1.270, "q": 1.345, "r": 0.412, "s": 0.738, "t": 1.575,
        "u": 0.774, "v": 0.604, "aa": 1.323, "ab": -0.932, "ac": -0.975,
        "ad": -0.827, "ae": -0.115, "af": 0.124,
    },
    x_scaling=DEFAULT_X_SCALING,
    y_scaling=_default_y_scaling(CHEBYSHEV),
)

BETA_MODEL = FitModel(
    basis=SIGMOID,
    coefficients={
        "a": 1.396, "b": -0.106, "c": 1.427, "d": 1.203, "e": -1.107,
        "f": 1.115, "g": -0.214, "h": 1.415, "i": -0.413, "j": 0.753,
        "k": 0.116, "l": -0.360, "m": 1.666, "n": -0.867, "o": 0.293,
        "p": -0.066, "q": 0.274, "r": -0.229, "s": 0.572, "t": -0.191,
        "u": 0.081, "v": -0.047, "aa": -0.158, "ab": 0.152, "ac": -0.140,
        "ad": 0.502, "ae": -0.272, "af": -0.036,
    },
    x_scaling=DEFAULT_X_SCALING,
    y_scaling=_default_y_scaling(SIGMOID),
)
