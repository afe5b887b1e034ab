"""Finite affine groups (Z/nZ)^x semidirect Z/nZ and their subgroups.

Elements are pairs ``(u, v)`` standing for the affine map ``t -> u*t + v`` of
Z/nZ.  The product is composition of maps acting on the left::

    (u1, v1) * (u2, v2) = (u1*u2, v1 + u1*v2)

Everything here is exhaustive and exact; the groups of interest have 32
elements, so brute force is the right tool.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator


class GroupError(ValueError):
    """Invalid group data (mismatched moduli, non-closed subsets, bad syntax)."""


@dataclass(frozen=True, eq=False)
class GroupElement:
    unit: int
    translation: int
    modulus: int = 8

    def __post_init__(self):
        n = self.modulus
        if n < 1:
            raise GroupError(f"modulus must be positive, got {n}")
        if math.gcd(self.unit, n) != 1:
            raise GroupError(f"{self.unit} is not a unit mod {n}")
        object.__setattr__(self, "unit", self.unit % n)
        object.__setattr__(self, "translation", self.translation % n)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return multiply(self, other)

    def __invert__(self) -> "GroupElement":
        return inverse(self)

    def __pow__(self, k: int) -> "GroupElement":
        base = self if k >= 0 else inverse(self)
        out = identity(self.modulus)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __hash__(self):
        return hash((self.unit, self.translation, self.modulus))

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return (self.unit, self.translation, self.modulus) == (
            other.unit, other.translation, other.modulus)

    def __lt__(self, other: "GroupElement"):
        return (self.unit, self.translation) < (other.unit, other.translation)

    def __str__(self):
        return f"({self.unit},{self.translation})"

    def __repr__(self):
        return f"GroupElement{self}"

    @property
    def order(self) -> int:
        k, g = 1, self
        one = identity(self.modulus)
        while g != one:
            g = g * self
            k += 1
        return k


def identity(modulus: int = 8) -> GroupElement:
    return GroupElement(1, 0, modulus)


def multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    if g.modulus != h.modulus:
        raise GroupError(f"cannot multiply elements mod {g.modulus} and mod {h.modulus}")
    n = g.modulus
    return GroupElement(g.unit * h.unit % n, (g.translation + g.unit * h.translation) % n, n)


def inverse(g: GroupElement) -> GroupElement:
    n = g.modulus
    u = pow(g.unit, -1, n)
    return GroupElement(u, -u * g.translation % n, n)


_ELEMENT_RE = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


def parse_element(text: str, modulus: int = 8) -> GroupElement:
    """Parse ``"(u,v)"`` with decimal residues."""
    m = _ELEMENT_RE.fullmatch(text.strip())
    if not m:
        raise GroupError(f"malformed group element {text!r}; expected '(u,v)'")
    return GroupElement(int(m.group(1)), int(m.group(2)), modulus)


def parse_elements(text: str, modulus: int = 8) -> list[GroupElement]:
    """Parse a comma/space separated list like ``"(1,0), (3,4)"``."""
    found = _ELEMENT_RE.findall(text)
    leftover = _ELEMENT_RE.sub("", text).replace(",", "").strip(" {}[]\n\t")
    if leftover:
        raise GroupError(f"unexpected text {leftover!r} in element list")
    return [GroupElement(int(u), int(v), modulus) for u, v in found]


class FiniteAffineGroup:
    """The full group (Z/nZ)^x semidirect Z/nZ."""

    def __init__(self, modulus: int = 8):
        if modulus < 1:
            raise GroupError(f"modulus must be positive, got {modulus}")
        self.modulus = modulus
        units = [u for u in range(1, modulus + 1) if math.gcd(u, modulus) == 1]
        units = sorted({u % modulus for u in units})
        self.elements: tuple[GroupElement, ...] = tuple(
            GroupElement(u, v, modulus) for u, v in product(units, range(modulus)))
        self._index = {g: i for i, g in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def __contains__(self, g) -> bool:
        return g in self._index

    def __eq__(self, other):
        return isinstance(other, FiniteAffineGroup) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("FiniteAffineGroup", self.modulus))

    def __repr__(self):
        return f"FiniteAffineGroup(modulus={self.modulus})"

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> GroupElement:
        return identity(self.modulus)

    def index(self, g: GroupElement) -> int:
        return self._index[g]

    def element(self, u: int, v: int) -> GroupElement:
        return GroupElement(u, v, self.modulus)

    def elements_from(self, pairs: Iterable[tuple[int, int]]) -> list[GroupElement]:
        return [self.element(u, v) for u, v in pairs]

    @cached_property
    def conjugacy_classes(self) -> tuple[frozenset[GroupElement], ...]:
        seen: set[GroupElement] = set()
        classes = []
        for g in self.elements:
            if g in seen:
                continue
            cls = conjugacy_class(self, g)
            seen |= cls
            classes.append(cls)
        return tuple(classes)

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, self.elements)


def _check_element(group: FiniteAffineGroup, g: GroupElement):
    if g.modulus != group.modulus:
        raise GroupError(f"element {g} (mod {g.modulus}) is not in {group!r}")


def conjugacy_class(group: FiniteAffineGroup, g: GroupElement) -> frozenset[GroupElement]:
    _check_element(group, g)
    return frozenset(h * g * inverse(h) for h in group)


class Subgroup:
    """A subgroup given by its members; closure is checked on construction."""

    def __init__(self, parent: FiniteAffineGroup, members: Iterable[GroupElement], name: str = ""):
        self.parent = parent
        self.members = frozenset(members)
        self.name = name
        for g in self.members:
            _check_element(parent, g)
        if parent.identity not in self.members:
            raise GroupError(f"subgroup {name or sorted(self.members)} lacks the identity")
        for g in self.members:
            if inverse(g) not in self.members:
                raise GroupError(f"subgroup {name!r} not closed under inverse at {g}")
            for h in self.members:
                if g * h not in self.members:
                    raise GroupError(f"subgroup {name!r} not closed: {g}*{h} = {g * h}")
        if parent.order % len(self.members):
            raise GroupError("subgroup order does not divide the group order")

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __contains__(self, g) -> bool:
        return g in self.members

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.parent == other.parent and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        label = f"{self.name}=" if self.name else ""
        return f"Subgroup({label}{{{', '.join(map(str, sorted(self.members)))}}})"

    @property
    def order(self) -> int:
        return len(self.members)

    def conjugate(self, g: GroupElement) -> "Subgroup":
        """``g S g^-1``."""
        gi = inverse(g)
        return Subgroup(self.parent, (g * s * gi for s in self.members))


def subgroup_generated(gens: Iterable[GroupElement], group: FiniteAffineGroup | None = None) -> Subgroup:
    gens = list(gens)
    if not gens:
        raise GroupError("need at least one generator")
    if group is None:
        group = FiniteAffineGroup(gens[0].modulus)
    for g in gens:
        _check_element(group, g)
    members = {group.identity}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(group, members)


@dataclass(frozen=True)
class GassmannCertificate:
    almost_conjugate: bool
    # one row per conjugacy class: (representative, class size, |H & C|, |K & C|)
    table: tuple[tuple[GroupElement, int, int, int], ...]


def is_almost_conjugate(H: Subgroup, K: Subgroup) -> GassmannCertificate:
    if H.parent != K.parent:
        raise GroupError("subgroups live in different groups")
    rows = []
    for cls in H.parent.conjugacy_classes:
        rows.append((min(cls), len(cls), len(H.members & cls), len(K.members & cls)))
    rows.sort()
    return GassmannCertificate(all(h == k for _, _, h, k in rows), tuple(rows))


def is_conjugate_subgroup(H: Subgroup, K: Subgroup) -> tuple[bool, GroupElement | None]:
    """Search all of G for ``g`` with ``g H g^-1 = K``."""
    if H.parent != K.parent:
        raise GroupError("subgroups live in different groups")
    if len(H) != len(K):
        return False, None
    for g in H.parent:
        gi = inverse(g)
        if all(g * h * gi in K.members for h in H.members):
            return True, g
    return False, None


class CosetSpace:
    """Cosets of ``subgroup`` with the induced permutation action of the parent.

    ``side="right"`` gives cosets ``S g`` acted on by right multiplication;
    ``side="left"`` gives cosets ``g S`` acted on by left multiplication.
    Cosets are ordered by their least element, so the coset of the identity
    has index 0.  ``action[g][i]`` is the index of the image of coset ``i``.
    """

    def __init__(self, subgroup: Subgroup, side: str = "right"):
        if side not in ("left", "right"):
            raise GroupError(f"side must be 'left' or 'right', not {side!r}")
        self.subgroup = subgroup
        self.side = side
        group = subgroup.parent
        S = subgroup.members
        cosets: dict[frozenset, None] = {}
        for g in group:
            c = frozenset(s * g for s in S) if side == "right" else frozenset(g * s for s in S)
            cosets.setdefault(c, None)
        ordered = sorted(cosets, key=min)
        self.cosets: tuple[frozenset[GroupElement], ...] = tuple(ordered)
        self.representatives: tuple[GroupElement, ...] = tuple(min(c) for c in ordered)
        self._lookup = {g: i for i, c in enumerate(ordered) for g in c}
        self.action: dict[GroupElement, tuple[int, ...]] = {}
        for g in group:
            if side == "right":
                perm = tuple(self._lookup[r * g] for r in self.representatives)
            else:
                perm = tuple(self._lookup[g * r] for r in self.representatives)
            self.action[g] = perm

    def __len__(self):
        return len(self.cosets)

    def index_of(self, g: GroupElement) -> int:
        """Index of the coset containing ``g``."""
        return self._lookup[g]

    def orbits(self, elements: Iterable[GroupElement]) -> list[tuple[int, ...]]:
        """Orbits of the subgroup generated by ``elements`` on coset indices."""
        perms = [self.action[g] for g in elements]
        seen: set[int] = set()
        out = []
        for start in range(len(self)):
            if start in seen:
                continue
            orbit = {start}
            stack = [start]
            while stack:
                i = stack.pop()
                for p in perms:
                    j = p[i]
                    if j not in orbit:
                        orbit.add(j)
                        stack.append(j)
            seen |= orbit
            out.append(tuple(sorted(orbit)))
        return out

    def cycle_type(self, g: GroupElement) -> tuple[int, ...]:
        return tuple(sorted(len(o) for o in self.orbits([g])))


def coset_space(S: Subgroup, side: str = "right") -> CosetSpace:
    return CosetSpace(S, side)


def automorphisms(group: FiniteAffineGroup, gens: list[GroupElement]) -> list[dict[GroupElement, GroupElement]]:
    """All automorphisms of ``group``, found by brute force over generator images.

    ``gens`` must generate the group.  Candidate images are filtered by element
    order, then each assignment is extended along the Cayley graph and kept
    only if it is a well-defined bijective homomorphism.
    """
    if len(subgroup_generated(gens, group)) != group.order:
        raise GroupError("gens do not generate the group")
    by_order: dict[int, list[GroupElement]] = {}
    for g in group:
        by_order.setdefault(g.order, []).append(g)
    choices = [by_order[g.order] for g in gens]
    found = []
    for images in product(*choices):
        phi = extend_homomorphism(group, gens, list(images))
        if phi is not None and len(set(phi.values())) == group.order:
            found.append(phi)
    return found


def extend_homomorphism(group: FiniteAffineGroup, gens: list[GroupElement],
                        images: list[GroupElement]) -> dict[GroupElement, GroupElement] | None:
    """Extend ``gens[i] -> images[i]`` to an endomorphism, or None if inconsistent."""
    phi = {group.identity: group.identity}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g, im in zip(gens, images):
                y, fy = x * g, phi[x] * im
                seen = phi.get(y)
                if seen is None:
                    phi[y] = fy
                    nxt.append(y)
                elif seen != fy:
                    return None
        frontier = nxt
    # the BFS only checked consistency along a spanning set of edges
    for x in group:
        for g, im in zip(gens, images):
            if phi[x * g] != phi[x] * im:
                return None
    return phi
