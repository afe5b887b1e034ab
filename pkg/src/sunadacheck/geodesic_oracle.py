"""Independent geometric count of self-intersections, in exact arithmetic.

A free group on ``g`` generators acts on the upper half plane as a Schottky
group: each half-edge of the ribbon order gets a disk centred on the real
line, placed left to right in the ribbon's cyclic order, and generator ``g``
maps the outside of the disk of ``g^-1`` onto the inside of the disk of
``g``.  The quotient of the region outside all disks is a hyperbolic surface
with the same thickened wedge as spine.  Self-intersections of a closed
geodesic are then the crossings of its lifts inside that region.

Every quantity involved is rational or lies in a quadratic extension, so the
tests below are exact sign computations on Fractions.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exact_linalg import RationalMat2
from .intersections import CALIBRATED_RIBBON, RibbonStructure
from .words import CyclicWord, Letter, Word, letter_inverse


class BoundaryHit(ArithmeticError):
    """A crossing lies exactly on a disk boundary; perturb the disk layout."""


def disk_layout(ribbon: RibbonStructure) -> dict[Letter, tuple[Fraction, Fraction]]:
    """Centre and radius for each half-edge.  Irregular on purpose, so that no
    crossing lands on a boundary circle for short words."""
    return {h: (Fraction(3 * k) + Fraction(k * k, 7), 1 + Fraction(k, 5)) for k, h in enumerate(ribbon.order)}


def schottky_generators(ribbon: RibbonStructure) -> dict[Letter, RationalMat2]:
    disks = disk_layout(ribbon)
    flip = RationalMat2(0, -1, 1, 0)

    def place(c, r):
        return RationalMat2(r, c, 0, 1)

    gens = {}
    for g in sorted({h[0] for h in ribbon.order}):
        m = place(*disks[(g, 1)]) @ flip @ place(*disks[(g, -1)]).inverse()
        gens[(g, 1)] = m
        gens[(g, -1)] = m.inverse()
    return gens


def _product(letters: Sequence[Letter], gens: dict[Letter, RationalMat2]) -> RationalMat2:
    out = RationalMat2.identity()
    for x in letters:
        out = out @ gens[x]
    return out


def axis(m: RationalMat2) -> tuple[Fraction, Fraction]:
    """Sum and product of the fixed points of a hyperbolic element.

    The axis is the half circle ``|z|^2 - sigma Re z + pi = 0``.
    """
    if m.c == 0:
        raise ValueError("element fixes infinity; not expected in a Schottky group")
    sigma = (m.a - m.d) / m.c
    pi = -m.b / m.c
    if sigma * sigma - 4 * pi <= 0:
        raise ValueError("element is not hyperbolic")
    return sigma, pi


def axes_cross(a1: tuple[Fraction, Fraction], a2: tuple[Fraction, Fraction]) -> bool:
    """Do two distinct axes meet?  True iff their endpoints interleave, i.e. the
    resultant of the two fixed-point quadratics is negative."""
    (s1, p1), (s2, p2) = a1, a2
    return (p1 - p2) ** 2 + (s1 - s2) * (s1 * p2 - s2 * p1) < 0


def crossing_in_domain(a1, a2, disks) -> bool:
    (s1, p1), (s2, p2) = a1, a2
    x = (p2 - p1) / (s2 - s1)
    inside = True
    for c, r in disks.values():
        # squared distance to the centre minus r^2, using |z|^2 = s1 x - p1
        margin = (s1 - 2 * c) * x + c * c - p1 - r * r
        if margin == 0:
            raise BoundaryHit(f"crossing at Re z = {x} lies on a disk boundary")
        if margin < 0:
            inside = False
    return inside


def geodesic_self_intersections(w: CyclicWord | Word, ribbon: RibbonStructure = CALIBRATED_RIBBON) -> int:
    """Self-intersection number of the closed geodesic of a primitive word.

    Lifts considered: axes of all rotations of ``w``, also conjugated by
    single letters, which covers every lift meeting the fundamental region.
    """
    letters = tuple(w.letters)
    n = len(letters)
    if n == 0 or not Word(letters).is_cyclically_reduced():
        raise ValueError("need a nonempty cyclically reduced word")
    if any(letters == letters[d:] + letters[:d] for d in range(1, n) if n % d == 0):
        raise ValueError("proper powers are not handled")
    gens = schottky_generators(ribbon)
    disks = disk_layout(ribbon)
    conj: list[tuple[Letter, ...]] = [()] + [(x,) for x in gens]
    found = set()
    for i in range(n):
        rot = letters[i:] + letters[:i]
        for h in conj:
            word = h + rot + tuple(letter_inverse(x) for x in reversed(h))
            found.add(axis(_product(word, gens)))
    axes = sorted(found)
    count = 0
    for k in range(len(axes)):
        for l in range(k + 1, len(axes)):
            if axes_cross(axes[k], axes[l]) and crossing_in_domain(axes[k], axes[l], disks):
                count += 1
    return count
