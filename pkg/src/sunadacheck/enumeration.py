"""Candidate curves sharing the edge budget of a target word, and trace matching.

A curve on the twice-holed torus is drawn on a spine with two vertices and
four edges ``a1, b1, b2, x1``.  Each generator of the free group is an edge
path; a cyclic word becomes an edge loop by concatenation followed by cyclic
free reduction, and the edge counts are read off that loop.
"""
from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .exact_linalg import MetricAssignment, trace_invariant, word_matrix
from .words import (SUBSURFACE, Alphabet, CyclicWord, HomologyClass, Letter, Word,
                    abelianize, format_word, least_rotation)

WORKERS_ENV = "SUNADACHECK_WORKERS"

EdgeStep = tuple[str, int]


def _reduce_edges(steps: Sequence[EdgeStep], cyclic: bool) -> list[EdgeStep]:
    stack: list[EdgeStep] = []
    for e in steps:
        if stack and stack[-1][0] == e[0] and stack[-1][1] == -e[1]:
            stack.pop()
        else:
            stack.append(e)
    if cyclic:
        i, j = 0, len(stack) - 1
        while i < j and stack[i][0] == stack[j][0] and stack[i][1] == -stack[j][1]:
            i += 1
            j -= 1
        stack = stack[i:j + 1]
    return stack


@dataclass(frozen=True)
class SpineModel:
    """Edge paths of the generators and the counted edge groups.

    ``paths`` maps each generator to the edges it traverses (an edge step is
    ``(edge, +1 | -1)``); ``groups`` names the three reported counts.
    """

    paths: Mapping[str, tuple[EdgeStep, ...]]
    groups: tuple[tuple[str, tuple[str, ...]], ...] = (("a1", ("a1",)), ("x1", ("x1",)), ("b", ("b1", "b2")))

    def letter_path(self, letter: Letter) -> list[EdgeStep]:
        g, s = letter
        path = list(self.paths[g])
        return path if s > 0 else [(e, -t) for e, t in reversed(path)]

    def edge_loop(self, letters: Sequence[Letter]) -> list[EdgeStep]:
        steps = [e for x in letters for e in self.letter_path(x)]
        return _reduce_edges(steps, cyclic=True)

    def count(self, steps: Sequence[EdgeStep]) -> tuple[int, ...]:
        c = Counter(e for e, _ in steps)
        return tuple(sum(c[e] for e in edges) for _, edges in self.groups)

    def contributions(self, alphabet: Alphabet = SUBSURFACE) -> dict[Letter, tuple[int, ...]]:
        """Edge counts of each letter on its own (as a path, not a loop)."""
        return {x: self.count(_reduce_edges(self.letter_path(x), cyclic=False)) for x in alphabet.letters()}

    def sharing_table(self, alphabet: Alphabet = SUBSURFACE) -> dict[tuple[Letter, Letter], tuple[int, ...]]:
        """Edges saved when two letters are adjacent, for every reduced pair that saves some."""
        contrib = self.contributions(alphabet)
        out = {}
        for x, y in product(alphabet.letters(), repeat=2):
            if x[0] == y[0] and x[1] == -y[1]:
                continue
            joint = self.count(_reduce_edges(self.letter_path(x) + self.letter_path(y), cyclic=False))
            saved = tuple(cx + cy - j for cx, cy, j in zip(contrib[x], contrib[y], joint))
            if any(saved):
                out[(x, y)] = saved
        return out

    def describe(self) -> dict:
        def fmt(path):
            return " ".join(e if t > 0 else f"{e}^-1" for e, t in path)
        return {
            "paths": {g: fmt(p) for g, p in self.paths.items()},
            "groups": {name: list(edges) for name, edges in self.groups},
            "contributions": {format_word([x]): list(v) for x, v in self.contributions().items()},
            "sharing": {f"{format_word([x])} {format_word([y])}": list(v)
                        for (x, y), v in self.sharing_table().items()},
        }


# Two-vertex spine fitted to the edge data: a = a1 at v, b = b1 b2^-1 with b1, b2
# from v to w, x = b1 x1 b1^-1 with x1 a loop at w.
FITTED_SPINE = SpineModel({
    "a": (("a1", 1),),
    "b": (("b1", 1), ("b2", -1)),
    "x": (("b1", 1), ("x1", 1), ("b1", -1)),
})


def edge_counts(w: CyclicWord | Word, model: SpineModel = FITTED_SPINE) -> tuple[int, int, int]:
    """``(a1, x1, b1 + b2)`` edge counts of the loop carried by ``w``."""
    return model.count(model.edge_loop(w.letters))


@dataclass(frozen=True)
class CandidateConstraints:
    """Letter multiset and edge budget defining the candidate list.

    ``fixed_letters`` fixes the multiset of non-``b`` letters; the number of
    ``b`` letters exceeds the number of ``b^-1`` letters by ``b_surplus`` and
    the total number of ``b`` letters is at most ``max_b_letters``.  A budget
    entry of ``None`` leaves that edge group unconstrained.
    """

    fixed_letters: tuple[tuple[Letter, int], ...] = ((("a", 1), 2), (("a", -1), 1), (("x", 1), 1), (("x", -1), 1))
    b_surplus: int = 1
    max_b_letters: int = 8
    budget: tuple[int | None, int | None, int | None] = (3, 2, 8)
    close_under_inversion: bool = True
    alphabet: Alphabet = SUBSURFACE

    def __post_init__(self):
        if self.b_surplus < 0 or self.max_b_letters < 0:
            raise ValueError("b surplus and b-letter bound must be nonnegative")
        if any(k <= 0 for _, k in self.fixed_letters):
            raise ValueError("letter multiplicities must be positive")
        if any(b is not None and b < 0 for b in self.budget):
            raise ValueError("edge budgets must be nonnegative")

    def b_splits(self) -> list[tuple[int, int]]:
        """Admissible ``(#b, #b^-1)`` pairs."""
        out = []
        nb_inv = 0
        while nb_inv + self.b_surplus + nb_inv <= self.max_b_letters:
            out.append((nb_inv + self.b_surplus, nb_inv))
            nb_inv += 1
        return out


DEFAULT_CONSTRAINTS = CandidateConstraints()


@dataclass(frozen=True)
class CandidateSet:
    """Output of :func:`generate_candidates` with the bookkeeping for each count."""

    words: tuple[CyclicWord, ...]
    oriented: tuple[CyclicWord, ...]         # classes satisfying the letter conditions as written
    linear_oriented: int                     # rotations of those classes, counted as linear words
    by_split: tuple[tuple[tuple[int, int], int, int], ...] = field(default=())  # (split, linear, cyclic)

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __contains__(self, w) -> bool:
        return w in set(self.words)

    def counts(self) -> dict[str, int]:
        unoriented = {w.unoriented_key() for w in self.words}
        return {
            "linear_words": self.linear_oriented,
            "cyclic_classes": len(self.oriented),
            "unoriented_classes": len(unoriented),
            "closed_set_cyclic_words": len(self.words),
            "closed_set_linear_words": sum(len({r.letters for r in w.rotations()}) for w in self.words),
        }


def _search(args) -> list[tuple[Letter, ...]]:
    """Linear words with the given letter counts that start with ``prefix`` and
    are cyclically reduced and within budget; each is returned as its least rotation."""
    prefix, counts, budget, alphabet_names, model_paths = args
    alphabet = Alphabet(alphabet_names)
    model = SpineModel(model_paths)
    counts = dict(counts)
    for x in prefix:
        counts[x] -= 1
    letters = sorted(counts, key=alphabet.key)
    word = list(prefix)
    total = len(word) + sum(counts.values())
    found: list[tuple[Letter, ...]] = []

    def rec():
        if len(word) == total:
            if word[0][0] == word[-1][0] and word[0][1] == -word[-1][1]:
                return
            got = model.count(model.edge_loop(word))
            if all(b is None or b == g for b, g in zip(budget, got)):
                found.append(least_rotation(word, alphabet))
            return
        last = word[-1] if word else None
        for x in letters:
            if counts[x] == 0 or (last and last[0] == x[0] and last[1] == -x[1]):
                continue
            counts[x] -= 1
            word.append(x)
            rec()
            word.pop()
            counts[x] += 1

    rec()
    return found


def worker_count(requested: int | None = None) -> int:
    if requested is not None:
        return max(1, requested)
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def generate_candidates(c: CandidateConstraints = DEFAULT_CONSTRAINTS, model: SpineModel = FITTED_SPINE,
                        workers: int | None = None) -> CandidateSet:
    """All cyclic words satisfying the letter conditions and the edge budget.

    Every cyclic class is visited through its rotations that start with the
    least letter present, so each class is found at least once.  The search is
    split by the second letter; with ``workers > 1`` the branches run in a
    process pool and the union is sorted, so the result never depends on the
    worker count.
    """
    alphabet = c.alphabet
    key = lambda w: [alphabet.key(x) for x in w.letters]
    oriented: set[tuple[Letter, ...]] = set()
    by_split = []
    jobs = []
    for nb, nbi in c.b_splits():
        counts = Counter(dict(c.fixed_letters))
        if nb:
            counts[("b", 1)] += nb
        if nbi:
            counts[("b", -1)] += nbi
        if not counts:
            continue
        first = min(counts, key=alphabet.key)
        branches = [(first,)]
        rest = {x: k - (x == first) for x, k in counts.items()}
        seconds = [x for x in sorted(rest, key=alphabet.key)
                   if rest[x] > 0 and not (x[0] == first[0] and x[1] == -first[1])]
        if sum(rest.values()) > 0:
            branches = [(first, s) for s in seconds]
        for prefix in branches:
            jobs.append(((nb, nbi), (prefix, tuple(counts.items()), c.budget, alphabet.names, dict(model.paths))))

    n = worker_count(workers)
    if n > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=n) as pool:
            results = list(pool.map(_search, [j for _, j in jobs]))
    else:
        results = [_search(j) for _, j in jobs]

    per_split: dict[tuple[int, int], set] = {}
    for (split, _), found in zip(jobs, results):
        per_split.setdefault(split, set()).update(found)
    linear_total = 0
    for split in c.b_splits():
        classes = per_split.get(split, set())
        linear = sum(len({w[i:] + w[:i] for i in range(len(w))}) for w in classes)
        by_split.append((split, linear, len(classes)))
        linear_total += linear
        oriented |= classes

    oriented_words = sorted((CyclicWord(w, alphabet) for w in oriented), key=key)
    words = set(oriented_words)
    if c.close_under_inversion:
        words |= {w.inverse() for w in oriented_words}
    return CandidateSet(tuple(sorted(words, key=key)), tuple(oriented_words), linear_total, tuple(by_split))


def homology_filter(cands: Iterable[CyclicWord], target: HomologyClass,
                    alphabet: Alphabet = SUBSURFACE) -> list[CyclicWord]:
    """Keep the words whose abelianization is ``target`` or ``-target``."""
    neg = -target
    return [w for w in cands if abelianize(w, alphabet) in (target, neg)]


@dataclass(frozen=True)
class TraceMatchReport:
    candidate_count: int
    target: CyclicWord
    target_value: Fraction
    # each matched class: its members among the candidates, sorted
    classes: tuple[tuple[CyclicWord, ...], ...]
    discriminating: bool
    # raw |tr| comparison gives the same answer (valid when determinants agree)
    raw_trace_agrees: bool

    def matched_words(self) -> list[CyclicWord]:
        return [w for cls in self.classes for w in cls]

    def class_keys(self) -> list[str]:
        return [format_word(cls[0].unoriented_key()) for cls in self.classes]


def find_trace_matches(cands: Iterable[CyclicWord], m: MetricAssignment, target: CyclicWord) -> TraceMatchReport:
    cands = list(cands)
    want = trace_invariant(m, target)
    target_m = word_matrix(m, target)
    groups: dict[tuple, list[CyclicWord]] = {}
    raw_agrees = True
    for w in cands:
        M = word_matrix(m, w)
        hit = M.trace ** 2 / M.det == want
        if M.det == target_m.det and (abs(M.trace) == abs(target_m.trace)) != hit:
            raw_agrees = False
        if hit:
            groups.setdefault(w.unoriented_key(), []).append(w)
    akey = (target.alphabet or SUBSURFACE).key
    classes = tuple(tuple(sorted(set(v), key=lambda w: [akey(x) for x in w.letters]))
                    for _, v in sorted(groups.items(), key=lambda kv: [akey(x) for x in kv[0]]))
    discriminating = not (len(cands) > 1 and sum(len(c) for c in classes) == len(cands))
    return TraceMatchReport(len(cands), target, want, classes, discriminating, raw_agrees)


def emit_candidates(cands: Iterable[CyclicWord], path: str) -> int:
    """Write one word per line in the parser's grammar; returns the line count."""
    lines = [format_word(w.letters) for w in cands]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + ("\n" if lines else ""))
    return len(lines)
