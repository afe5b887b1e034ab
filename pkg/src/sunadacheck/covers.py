"""Curve preimages in the finite covers attached to a homomorphism onto G.

For a surjection ``rho: pi_1 -> G`` and a subgroup ``S``, the cover ``M_S``
corresponds to ``rho^-1(S)``.  Components of the preimage of a closed curve
``w`` are the orbits of ``<rho(w)>`` on the right cosets ``S\\G``, and the
covering degree of a component is its orbit size.  In the regular cover ``M``
the lifts of ``w`` are indexed by the left cosets ``G/L`` with
``L = <rho(w)>``; ``S`` permutes them by left multiplication.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .group_core import (CosetSpace, FiniteAffineGroup, GroupElement, Subgroup,
                         automorphisms, extend_homomorphism, inverse, subgroup_generated)
from .words import (Alphabet, CyclicWord, Endomorphism, Word, all_words,
                    apply_endomorphism, free_reduce, random_word)


@dataclass(frozen=True)
class Homomorphism:
    alphabet: Alphabet
    image: Mapping[str, GroupElement]
    target: FiniteAffineGroup

    def __post_init__(self):
        object.__setattr__(self, "image", dict(self.image))
        missing = set(self.alphabet.names) - set(self.image)
        if missing:
            raise ValueError(f"no image given for generators {sorted(missing)}")
        for g, x in self.image.items():
            if x not in self.target:
                raise ValueError(f"image {x} of {g} is not in {self.target!r}")

    def __call__(self, w: Word | CyclicWord) -> GroupElement:
        return evaluate(self, w)

    def extended(self, name: str, value: GroupElement) -> "Homomorphism":
        """Same map with one more generator, e.g. ``x -> rho(d a^-1)``."""
        names = self.alphabet.names + (name,) if name not in self.alphabet else self.alphabet.names
        return Homomorphism(Alphabet(names), {**self.image, name: value}, self.target)

    def on(self, alphabet: Alphabet, definitions: Mapping[str, Word]) -> "Homomorphism":
        """The induced map on another basis whose generators are words in this one."""
        return Homomorphism(alphabet, {g: evaluate(self, definitions[g]) for g in alphabet}, self.target)


def evaluate(rho: Homomorphism, w: Word | CyclicWord) -> GroupElement:
    """Product of generator images read left to right."""
    out = rho.target.identity
    for g, s in w.letters:
        try:
            x = rho.image[g]
        except KeyError:
            raise ValueError(f"generator {g!r} is not in the domain of the homomorphism") from None
        out = out * (x if s > 0 else inverse(x))
    return out


def check_surjective(rho: Homomorphism) -> tuple[bool, int]:
    order = len(subgroup_generated(list(rho.image.values()), rho.target))
    return order == rho.target.order, order


@dataclass(frozen=True)
class LiftComponent:
    subgroup: Subgroup
    # the curve as a linear word; its rotation fixes the basepoint of the lifts
    base_word: Word
    degree: int
    # indices into the right coset space S\G
    coset_orbit: tuple[int, ...]


@lru_cache(maxsize=64)
def _right_cosets(S: Subgroup) -> CosetSpace:
    return CosetSpace(S, "right")


def preimage_components(rho: Homomorphism, S: Subgroup, w: Word | CyclicWord) -> list[LiftComponent]:
    """Components of the preimage of ``w`` in ``M_S``, sorted by (degree, orbit).

    The word is freely reduced but not rotated: rotating conjugates ``rho(w)``
    and would relabel the components.
    """
    base = free_reduce(Word(tuple(w.letters)))
    space = _right_cosets(S)
    orbits = space.orbits([evaluate(rho, base)])
    comps = [LiftComponent(S, base, len(o), o) for o in orbits]
    comps.sort(key=lambda c: (c.degree, c.coset_orbit))
    return comps


def degree_multiset(components: Iterable[LiftComponent]) -> tuple[int, ...]:
    return tuple(sorted(c.degree for c in components))


# -- lifts in the full cover M ----------------------------------------------------

# gamma_i -> representative of the coset g L; the fixed numbering of the sixteen lifts
DEFAULT_GAMMA_TABLE: tuple[tuple[int, int], ...] = (
    (1, 0), (1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7),
    (3, 0), (3, 3), (3, 6), (3, 1), (3, 4), (3, 7), (3, 2), (3, 5),
)


class LiftLabels:
    """Left cosets ``G/L`` with the fixed gamma numbering attached."""

    def __init__(self, L: Subgroup, table: Sequence[tuple[int, int]] | None = DEFAULT_GAMMA_TABLE):
        """``table=None`` numbers the cosets in order of their least element."""
        self.L = L
        self.space = CosetSpace(L, "left")
        group = L.parent
        if table is None:
            table = [(g.unit, g.translation) for g in self.space.representatives]
        reps = [group.element(u, v) for u, v in table]
        idx = [self.space.index_of(g) for g in reps]
        if len(table) != len(self.space) or sorted(idx) != list(range(len(self.space))):
            raise ValueError("gamma table is not a bijection onto G/L")
        self.table_reps = tuple(reps)
        # coset index -> gamma number (1-based)
        self.gamma_of = {i: k + 1 for k, i in enumerate(idx)}
        self.coset_of = {k + 1: i for k, i in enumerate(idx)}

    def gamma(self, g: GroupElement) -> int:
        """Gamma number of the lift ``g . gamma_1``."""
        return self.gamma_of[self.space.index_of(g)]

    def rep(self, gamma: int) -> GroupElement:
        return self.table_reps[gamma - 1]


@dataclass(frozen=True)
class OrbitPartition:
    subgroup: Subgroup
    L: Subgroup
    # orbits as sorted tuples of coset indices of G/L, sorted
    orbits: tuple[tuple[int, ...], ...]
    # same orbits as gamma numbers
    gamma_orbits: tuple[tuple[int, ...], ...]

    def sizes(self) -> tuple[int, ...]:
        return tuple(sorted(len(o) for o in self.orbits))

    def is_partition(self) -> bool:
        flat = [i for o in self.orbits for i in o]
        return len(flat) == len(set(flat))


def lift_orbit_partition(S: Subgroup, L: Subgroup, labels: LiftLabels | None = None) -> OrbitPartition:
    labels = labels or LiftLabels(L)
    orbits = tuple(sorted(labels.space.orbits(S.members)))
    gamma = tuple(sorted(tuple(sorted(labels.gamma_of[i] for i in o)) for o in orbits))
    return OrbitPartition(S, L, orbits, gamma)


def component_orbit(labels: LiftLabels, comp: LiftComponent) -> tuple[int, ...]:
    """The S-orbit on G/L lying over a component, as coset indices.

    A component is an orbit of ``<rho(w)>`` on right cosets ``S g``; it covers
    the same double coset ``S g L`` as the S-orbit of the lift ``g L``.
    """
    space = CosetSpace(comp.subgroup, "right")
    g = space.representatives[comp.coset_orbit[0]]
    return tuple(sorted({labels.space.index_of(s * g) for s in comp.subgroup.members}))


# -- involution lifting -----------------------------------------------------------

@dataclass(frozen=True)
class InvolutionReport:
    compatible: bool
    phi: dict[GroupElement, GroupElement] | None
    phi_kind: str            # "identity", "psi", "other", or "none"
    psi_matches: bool        # does (j,k) -> (j,-k) satisfy phi o rho = rho o tau?
    preserves: dict[str, bool]
    psi_preserves: dict[str, bool]
    membership_checked: int
    membership_ok: bool
    message: str


def psi_automorphism(group: FiniteAffineGroup) -> dict[GroupElement, GroupElement]:
    return {g: group.element(g.unit, -g.translation) for g in group}


def find_compatible_automorphism(rho: Homomorphism, tau: Endomorphism) -> dict[GroupElement, GroupElement] | None:
    """The automorphism phi of G with phi o rho = rho o tau, if one exists."""
    group = rho.target
    gens = [rho.image[g] for g in rho.alphabet]
    images = [evaluate(rho, apply_endomorphism(tau, Word(((g, 1),)))) for g in rho.alphabet]
    phi = extend_homomorphism(group, gens, images)
    if phi is None or len(phi) != group.order or len(set(phi.values())) != group.order:
        return None
    return phi


def verify_involution_compat(rho: Homomorphism, tau: Endomorphism, subgroups: Mapping[str, Subgroup],
                             exhaustive_length: int = 4, random_words: int = 10_000,
                             random_length: tuple[int, int] = (5, 14), seed: int = 0) -> InvolutionReport:
    group = rho.target
    psi = psi_automorphism(group)
    psi_ok = all(psi[evaluate(rho, Word(((g, 1),)))] ==
                 evaluate(rho, apply_endomorphism(tau, Word(((g, 1),)))) for g in rho.alphabet)
    psi_pres = {name: {psi[s] for s in S.members} == set(S.members) for name, S in subgroups.items()}
    phi = find_compatible_automorphism(rho, tau)
    if phi is None:
        return InvolutionReport(False, None, "none", psi_ok, {k: False for k in subgroups},
                                psi_pres, 0, False,
                                "no automorphism phi of G satisfies phi o rho = rho o tau; lifting criterion unverified")
    if all(phi[g] == g for g in group):
        kind = "identity"
    elif all(phi[g] == psi[g] for g in group):
        kind = "psi"
    else:
        kind = "other"
    preserves = {name: {phi[s] for s in S.members} == set(S.members) for name, S in subgroups.items()}

    # convention-free check of the lifting criterion: rho(w) in S iff rho(tau w) in S
    checked, ok = 0, True
    rng = random.Random(seed)
    words = list(all_words(rho.alphabet, exhaustive_length))
    words += [random_word(rho.alphabet, rng.randint(*random_length), rng) for _ in range(random_words)]
    for w in words:
        x, y = evaluate(rho, w), evaluate(rho, apply_endomorphism(tau, w))
        for S in subgroups.values():
            if (x in S) != (y in S):
                ok = False
        checked += 1
    compatible = ok and all(preserves.values())
    msg = (f"phi is the {kind} automorphism" if kind != "other" else "phi is a non-identity automorphism other than psi")
    msg += "; preserves " + ", ".join(f"{k}={v}" for k, v in preserves.items())
    return InvolutionReport(compatible, phi, kind, psi_ok, preserves, psi_pres, checked, ok, msg)


def realizing_automorphisms(rho: Homomorphism, tau: Endomorphism) -> list[dict[GroupElement, GroupElement]]:
    """Brute-force search of Aut(G) for automorphisms matching rho o tau on generators.

    Independent of :func:`find_compatible_automorphism`: enumerates the whole
    automorphism group first and filters.
    """
    group = rho.target
    basis = [group.element(3, 0), group.element(5, 0), group.element(1, 1)]
    if len(subgroup_generated(basis, group)) != group.order:
        basis = list(group.elements)
    wanted = {rho.image[g]: evaluate(rho, apply_endomorphism(tau, Word(((g, 1),)))) for g in rho.alphabet}
    out = []
    for phi in automorphisms(group, basis):
        if all(phi[k] == v for k, v in wanted.items()):
            out.append(phi)
    return out


def sunada_degree_check(rho: Homomorphism, H: Subgroup, K: Subgroup, max_length: int = 4) -> tuple[int, list[Word]]:
    """Compare degree multisets over H and K for every word up to ``max_length``.

    Returns (number of words checked, counterexamples).  Uses the coset
    permutation of ``rho(w)`` directly, which is what preimage_components does.
    """
    sh, sk = CosetSpace(H, "right"), CosetSpace(K, "right")
    memo: dict[GroupElement, bool] = {}
    bad, n = [], 0
    for w in all_words(rho.alphabet, max_length):
        g = evaluate(rho, w)
        if g not in memo:
            memo[g] = Counter(sh.cycle_type(g)) == Counter(sk.cycle_type(g))
        if not memo[g]:
            bad.append(w)
        n += 1
    return n, bad
