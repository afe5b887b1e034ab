"""Exact 2x2 rational matrices for holonomy computations.

Entries are :class:`fractions.Fraction`, so traces and determinants are exact.
Lengths go through mpmath only at the very end, for display.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

import mpmath

from .words import CyclicWord, Word, format_word, parse_word

Rational = Fraction


def as_rational(x) -> Fraction:
    """Accept ints, Fractions and strings like ``"5/4"`` or ``"-16/3"``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as an exact rational (floats are rejected)")


@dataclass(frozen=True)
class RationalMat2:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, as_rational(getattr(self, name)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RationalMat2":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @classmethod
    def identity(cls) -> "RationalMat2":
        return cls(1, 0, 0, 1)

    def rows(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        return ((self.a, self.b), (self.c, self.d))

    def __matmul__(self, o: "RationalMat2") -> "RationalMat2":
        return RationalMat2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                            self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def scale(self, k) -> "RationalMat2":
        k = as_rational(k)
        return RationalMat2(k * self.a, k * self.b, k * self.c, k * self.d)

    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> Fraction:
        return self.a + self.d

    def inverse(self) -> "RationalMat2":
        det = self.det
        if det == 0:
            raise ZeroDivisionError("singular matrix")
        return RationalMat2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def __str__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


class MetricAssignment:
    """Invertible rational matrices attached to generators."""

    def __init__(self, matrices: Mapping[str, RationalMat2], name: str = ""):
        self.matrices = dict(matrices)
        self.name = name
        for g, m in self.matrices.items():
            if m.det == 0:
                raise ValueError(f"matrix for {g} is singular")
        self._inverses = {g: m.inverse() for g, m in self.matrices.items()}

    @classmethod
    def from_strings(cls, rows: Mapping[str, Sequence[Sequence[str]]], name: str = "") -> "MetricAssignment":
        return cls({g: RationalMat2.from_rows(r) for g, r in rows.items()}, name)

    def __getitem__(self, g: str) -> RationalMat2:
        return self.matrices[g]

    def generators(self) -> list[str]:
        return list(self.matrices)

    def letter(self, g: str, sign: int) -> RationalMat2:
        try:
            return self.matrices[g] if sign > 0 else self._inverses[g]
        except KeyError:
            raise ValueError(f"generator {g!r} has no assigned matrix") from None

    def scaled(self, factors: Mapping[str, Fraction]) -> "MetricAssignment":
        return MetricAssignment({g: m.scale(factors.get(g, 1)) for g, m in self.matrices.items()}, self.name)

    def to_strings(self) -> dict[str, list[list[str]]]:
        return {g: [[str(x) for x in row] for row in m.rows()] for g, m in self.matrices.items()}


def word_matrix(m: MetricAssignment, w: Word | CyclicWord, order: str = "left") -> RationalMat2:
    """Ordered product of letter matrices.

    ``order="left"`` multiplies in reading order (``w = g1 g2 ...`` gives
    ``M(g1) M(g2) ...``), the convention that reproduces the published trace;
    ``"right"`` reverses it and exists for calibration.
    """
    letters = w.letters if order == "left" else tuple(reversed(w.letters))
    out = RationalMat2.identity()
    for g, s in letters:
        out = out @ m.letter(g, s)
    return out


def trace_invariant(m: MetricAssignment, w: Word | CyclicWord) -> Fraction:
    """``tr(M)^2 / det(M)``; invariant under conjugation, inversion and scaling."""
    M = word_matrix(m, w)
    det = M.det
    if det == 0:
        raise ZeroDivisionError("singular word matrix")
    return M.trace ** 2 / det


class NotHyperbolicError(ValueError):
    pass


def hyperbolic_length(m: MetricAssignment, w: Word | CyclicWord, prec: int = 128) -> mpmath.mpf:
    """``2 arccosh(|tr| / (2 sqrt(det)))`` evaluated at ``prec`` bits."""
    M = word_matrix(m, w)
    inv = M.trace ** 2 / M.det if M.det else None
    if inv is None or M.det < 0:
        raise NotHyperbolicError(f"{format_word(w.letters)!r} has determinant {M.det}")
    if inv <= 4:
        kind = "parabolic or trivial" if inv == 4 else "elliptic"
        raise NotHyperbolicError(f"{format_word(w.letters) or '<empty>'!r} is {kind} (tr^2/det = {inv})")
    with mpmath.workprec(prec):
        half = mpmath.sqrt(mpmath.mpf(inv.numerator) / inv.denominator) / 2
        return 2 * mpmath.acosh(half)


# -- calibration of the published matrices ----------------------------------------

PUBLISHED_B = RationalMat2(4, 0, 0, Fraction(1, 4))
PUBLISHED_X = RationalMat2(Fraction(5, 3), Fraction(-16, 3), Fraction(-1, 3), Fraction(5, 3))
A_CANDIDATES: dict[str, RationalMat2] = {
    "as printed [[5/3,3/4],[3/4,5/4]]": RationalMat2(Fraction(5, 3), Fraction(3, 4), Fraction(3, 4), Fraction(5, 4)),
    "[[5/4,3/4],[3/4,5/4]]": RationalMat2(Fraction(5, 4), Fraction(3, 4), Fraction(3, 4), Fraction(5, 4)),
    "[[5/3,4/3],[4/3,5/3]]": RationalMat2(Fraction(5, 3), Fraction(4, 3), Fraction(4, 3), Fraction(5, 3)),
}
TARGET_TRACE = Fraction(109505, 2048)
ALPHA_SUBSURFACE = "a b x a b a^-1 b^-1 x^-1"


@dataclass(frozen=True)
class CalibrationRow:
    candidate: str
    order: str
    det_a: Fraction
    trace: Fraction
    matches: bool


def calibrate_metric(candidates: Mapping[str, RationalMat2] = A_CANDIDATES,
                     word: str = ALPHA_SUBSURFACE, target: Fraction = TARGET_TRACE,
                     b: RationalMat2 = PUBLISHED_B, x: RationalMat2 = PUBLISHED_X
                     ) -> tuple[list[CalibrationRow], MetricAssignment | None]:
    """Try every transcription of rho_m(a) with both evaluation orders.

    Returns all rows and the unique matching metric (``None`` if no candidate
    or more than one reproduces ``target`` exactly).
    """
    w = parse_word(word)
    rows, hits = [], []
    for (name, a), order in product(candidates.items(), ("left", "right")):
        metric = MetricAssignment({"a": a, "b": b, "x": x}, name)
        tr = word_matrix(metric, w, order).trace
        rows.append(CalibrationRow(name, order, a.det, tr, tr == target))
        if tr == target:
            hits.append((metric, order))
    chosen = hits[0][0] if len(hits) == 1 and hits[0][1] == "left" else None
    return rows, chosen


def calibrated_metric() -> MetricAssignment:
    """The calibrated metric preset (the transcription that reproduces the trace)."""
    return MetricAssignment({"a": A_CANDIDATES["[[5/4,3/4],[3/4,5/4]]"], "b": PUBLISHED_B, "x": PUBLISHED_X},
                            "calibrated")


def printed_metric() -> MetricAssignment:
    return MetricAssignment({"a": A_CANDIDATES["as printed [[5/3,3/4],[3/4,5/4]]"], "b": PUBLISHED_B,
                             "x": PUBLISHED_X}, "as-printed")


def identity_metric(generators: Iterable[str] = "abx") -> MetricAssignment:
    return MetricAssignment({g: RationalMat2.identity() for g in generators}, "identity")


METRIC_PRESETS = {"calibrated": calibrated_metric, "printed": printed_metric, "identity": identity_metric}
