"""Words in free groups and surface groups.

A letter is a pair ``(name, sign)`` with ``sign`` in ``{+1, -1}``; a word is a
tuple of letters.  Cyclic words (free homotopy classes of loops) are stored as
their least rotation under the alphabet order with ``g < g^-1``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

Letter = tuple[str, int]


class WordSyntaxError(ValueError):
    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        pointer = f"\n  {text}\n  {' ' * position}^" if text else ""
        super().__init__(f"{message} at position {position}{pointer}")


@dataclass(frozen=True)
class Alphabet:
    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"generator names must be distinct: {names}")
        for n in names:
            if len(n) != 1 or not n.isalpha() or not n.islower():
                raise ValueError(f"generator names must be single lowercase letters, got {n!r}")

    @classmethod
    def of(cls, names: str | Iterable[str]) -> "Alphabet":
        return cls(tuple(names))

    def __contains__(self, name) -> bool:
        return name in self.names

    def __iter__(self):
        return iter(self.names)

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def letters(self) -> list[Letter]:
        """All signed letters, in canonical order g, g^-1, h, h^-1, ..."""
        return [(g, s) for g in self.names for s in (1, -1)]

    def key(self, letter: Letter) -> tuple[int, int]:
        return (self.names.index(letter[0]), 0 if letter[1] > 0 else 1)


SURFACE = Alphabet(("a", "b", "c", "d"))
SUBSURFACE = Alphabet(("a", "b", "x"))


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        letters = tuple((str(g), int(s)) for g, s in self.letters)
        for g, s in letters:
            if s not in (1, -1):
                raise ValueError(f"letter sign must be +1 or -1, got {s} for {g}")
        object.__setattr__(self, "letters", letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.letters[i])
        return self.letters[i]

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r})"

    def inverse(self) -> "Word":
        return Word(tuple((g, -s) for g, s in reversed(self.letters)))

    def generators(self) -> set[str]:
        return {g for g, _ in self.letters}

    def is_reduced(self) -> bool:
        return all(not _cancels(x, y) for x, y in zip(self.letters, self.letters[1:]))

    def is_cyclically_reduced(self) -> bool:
        return self.is_reduced() and not (len(self) > 1 and _cancels(self.letters[-1], self.letters[0]))


def _cancels(x: Letter, y: Letter) -> bool:
    return x[0] == y[0] and x[1] == -y[1]


def letter_inverse(x: Letter) -> Letter:
    return (x[0], -x[1])


# -- parsing and formatting -------------------------------------------------

class _Parser:
    def __init__(self, text: str, alphabet: Alphabet | None):
        self.text = text
        self.pos = 0
        self.alphabet = alphabet

    def error(self, message: str, pos: int | None = None):
        raise WordSyntaxError(message, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            self.error(f"expected {ch!r}, found {found}")
        self.pos += 1

    def word(self, stop: str) -> list[Letter]:
        out: list[Letter] = []
        while self.peek() and self.peek() not in stop:
            out.extend(self.term())
        return out

    def term(self) -> list[Letter]:
        start = self.pos
        atom = self.atom()
        if self.peek() == "^":
            self.pos += 1
            self.skip()
            sign = 1
            if self.pos < len(self.text) and self.text[self.pos] == "-":
                sign = -1
                self.pos += 1
            digits_start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if self.pos == digits_start:
                self.error("expected exponent digits")
            k = int(self.text[digits_start:self.pos])
            if k == 0:
                return []
            block = atom if sign > 0 else [letter_inverse(x) for x in reversed(atom)]
            return block * k
        if not atom and self.pos == start:
            self.error("empty term")
        return atom

    def atom(self) -> list[Letter]:
        ch = self.peek()
        if ch == "(":
            open_pos = self.pos
            self.pos += 1
            inner = self.word(")")
            if self.peek() != ")":
                self.error("unclosed '('", open_pos)
            self.pos += 1
            return inner
        if ch == "[":
            open_pos = self.pos
            self.pos += 1
            u = self.word(",]")
            if self.peek() != ",":
                self.error("commutator needs two entries separated by ','")
            self.pos += 1
            v = self.word("]")
            if self.peek() != "]":
                self.error("unclosed '['", open_pos)
            self.pos += 1
            return commutator(Word(tuple(u)), Word(tuple(v))).letters
        if ch and ch.isalpha() and ch.islower():
            if self.alphabet is not None and ch not in self.alphabet:
                self.error(f"unknown generator {ch!r} (alphabet {''.join(self.alphabet)})")
            self.pos += 1
            return [(ch, 1)]
        if not ch:
            self.error("unexpected end of input")
        self.error(f"unexpected character {ch!r}")


def parse_word(text: str, alphabet: Alphabet | None = None) -> Word:
    """Parse ``text`` into an unreduced word.

    Grammar: ``word ::= term*``, ``term ::= atom ("^" "-"? digits)?``,
    ``atom ::= letter | "(" word ")" | "[" word "," word "]"`` with
    ``[u,v] = u v u^-1 v^-1``.
    """
    p = _Parser(text, alphabet)
    letters = p.word("")
    if p.peek():
        p.error(f"unexpected character {p.peek()!r}")
    return Word(tuple(letters))


def format_word(w: Word | Sequence[Letter]) -> str:
    letters = w.letters if isinstance(w, Word) else w
    return " ".join(g if s > 0 else f"{g}^-1" for g, s in letters)


def commutator(u: Word, v: Word) -> Word:
    return u + v + u.inverse() + v.inverse()


# -- reduction --------------------------------------------------------------

def free_reduce(w: Word) -> Word:
    stack: list[Letter] = []
    for x in w.letters:
        if stack and _cancels(stack[-1], x):
            stack.pop()
        else:
            stack.append(x)
    return Word(tuple(stack))


def _strip_conjugation(letters: Sequence[Letter]) -> tuple[Letter, ...]:
    i, j = 0, len(letters) - 1
    while i < j and _cancels(letters[i], letters[j]):
        i += 1
        j -= 1
    return tuple(letters[i:j + 1])


@dataclass(frozen=True)
class CyclicWord:
    """A cyclically reduced word up to rotation, stored as its least rotation."""

    letters: tuple[Letter, ...]
    alphabet: Alphabet | None = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        w = Word(self.letters)
        if not w.is_cyclically_reduced():
            raise ValueError(f"{format_word(w)!r} is not cyclically reduced")
        object.__setattr__(self, "letters", least_rotation(w.letters, self.alphabet))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self):
        return format_word(self.letters)

    def __repr__(self):
        return f"CyclicWord({format_word(self.letters)!r})"

    @property
    def word(self) -> Word:
        return Word(self.letters)

    def inverse(self) -> "CyclicWord":
        return CyclicWord(Word(self.letters).inverse().letters, self.alphabet)

    def rotations(self) -> list[Word]:
        n = len(self.letters)
        return [Word(self.letters[i:] + self.letters[:i]) for i in range(n)]

    def unoriented_key(self) -> tuple[Letter, ...]:
        """Canonical key for the class under rotation and inversion."""
        inv = self.inverse().letters
        key = self.alphabet.key if self.alphabet else _default_key
        return min(self.letters, inv, key=lambda ls: [key(x) for x in ls])

    def is_primitive(self) -> bool:
        n = len(self.letters)
        return all(self.letters != self.letters[d:] + self.letters[:d]
                   for d in range(1, n) if n % d == 0)


def _default_key(letter: Letter) -> tuple[str, int]:
    return (letter[0], 0 if letter[1] > 0 else 1)


def least_rotation(letters: Sequence[Letter], alphabet: Alphabet | None = None) -> tuple[Letter, ...]:
    letters = tuple(letters)
    if not letters:
        return letters
    key = alphabet.key if alphabet else _default_key
    keyed = [key(x) for x in letters]
    n = len(letters)
    best = min(range(n), key=lambda i: keyed[i:] + keyed[:i])
    return letters[best:] + letters[:best]


def cyclic_reduce(w: Word, alphabet: Alphabet | None = None) -> CyclicWord:
    return CyclicWord(_strip_conjugation(free_reduce(w).letters), alphabet)


# -- endomorphisms and homology -----------------------------------------------

@dataclass(frozen=True)
class Endomorphism:
    """Substitution ``g -> image[g]``; generators without an image are fixed."""

    image: Mapping[str, Word]

    def __post_init__(self):
        object.__setattr__(self, "image", dict(self.image))

    @classmethod
    def from_strings(cls, images: Mapping[str, str], alphabet: Alphabet | None = None) -> "Endomorphism":
        return cls({g: parse_word(t, alphabet) for g, t in images.items()})

    @classmethod
    def identity(cls) -> "Endomorphism":
        return cls({})

    def __call__(self, w: Word) -> Word:
        return apply_endomorphism(self, w)

    def letter_image(self, x: Letter) -> Word:
        img = self.image.get(x[0], Word(((x[0], 1),)))
        return img if x[1] > 0 else img.inverse()


def apply_endomorphism(phi: Endomorphism, w: Word) -> Word:
    out: list[Letter] = []
    for x in w.letters:
        out.extend(phi.letter_image(x).letters)
    return free_reduce(Word(tuple(out)))


def change_basis(phi: Endomorphism, definitions: Mapping[str, Word],
                 old_in_new: Mapping[str, Word], new_alphabet: Alphabet) -> Endomorphism:
    """Express ``phi`` in a new basis.

    ``definitions[g]`` writes each new generator in the old letters (for
    example ``x = d a^-1``); ``old_in_new`` writes the old letters back in the
    new basis (``d = x a``).  Images are computed in the old letters, then
    rewritten.  Raises if an image leaves the span of the new alphabet.
    """
    back = Endomorphism(dict(old_in_new))
    images = {}
    for g in new_alphabet:
        old = apply_endomorphism(phi, definitions[g])
        new = apply_endomorphism(back, old)
        stray = new.generators() - set(new_alphabet.names)
        if stray:
            raise ValueError(f"image of {g} involves {sorted(stray)} outside {new_alphabet.names}")
        images[g] = new
    return Endomorphism(images)


@dataclass(frozen=True)
class HomologyClass:
    alphabet: tuple[str, ...]
    vector: tuple[int, ...]

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        self._same(other)
        return HomologyClass(self.alphabet, tuple(x + y for x, y in zip(self.vector, other.vector)))

    def __neg__(self) -> "HomologyClass":
        return HomologyClass(self.alphabet, tuple(-x for x in self.vector))

    def _same(self, other):
        if self.alphabet != other.alphabet:
            raise ValueError("homology classes over different alphabets")

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.alphabet, self.vector))

    def __str__(self):
        return "(" + ", ".join(f"{g}:{k}" for g, k in zip(self.alphabet, self.vector)) + ")"


def abelianize(w: Word | CyclicWord, alphabet: Alphabet) -> HomologyClass:
    counts = dict.fromkeys(alphabet.names, 0)
    for g, s in w.letters:
        if g not in counts:
            raise ValueError(f"generator {g!r} not in alphabet {alphabet.names}")
        counts[g] += s
    return HomologyClass(alphabet.names, tuple(counts[g] for g in alphabet.names))


# -- surface-group conjugacy (Dehn's algorithm) -----------------------------------

def _relator_cycles(relator: Word) -> set[tuple[Letter, ...]]:
    r = cyclic_reduce(relator).letters
    out = set()
    for cand in (r, Word(r).inverse().letters):
        for i in range(len(cand)):
            out.add(cand[i:] + cand[:i])
    return out


def _cyc(letters: Sequence[Letter]) -> list[Letter]:
    return list(_strip_conjugation(free_reduce(Word(tuple(letters))).letters))


def _dehn_cyclic(letters: list[Letter], cycles: set[tuple[Letter, ...]], n: int) -> list[Letter]:
    """Replace cyclic subwords longer than half a relator by the shorter complement."""
    w = _cyc(letters)
    changed = True
    while changed and w:
        changed = False
        L = len(w)
        ww = w + w
        for k in range(n, n // 2, -1):
            if k > L:
                continue
            for i in range(L):
                piece = tuple(ww[i:i + k])
                for r in cycles:
                    if r[:k] == piece:
                        complement = Word(r[k:]).inverse().letters
                        w = _cyc(list(complement) + ww[i + k:i + L])
                        changed = True
                        break
                if changed:
                    break
            if changed:
                break
    return w


def _half_swaps(w: list[Letter], cycles, n: int):
    L = len(w)
    ww = w + w
    k = n // 2
    for i in range(L):
        piece = tuple(ww[i:i + k])
        for r in cycles:
            if r[:k] == piece:
                yield list(Word(r[k:]).inverse().letters) + ww[i + k:i + L]


def dehn_normal_forms(w: Word, relator: Word, limit: int = 20000) -> set[tuple[Letter, ...]]:
    """All cyclic words reachable from ``w`` by Dehn reductions and half-relator swaps.

    For a C'(1/6) relator every conjugacy class has finitely many Dehn-reduced
    cyclic forms and they are connected by length-preserving half swaps, so two
    words are conjugate exactly when these sets meet.
    """
    cycles = _relator_cycles(relator)
    n = len(next(iter(cycles)))
    start = _dehn_cyclic(list(w.letters), cycles, n)
    seen = {least_rotation(start)}
    todo = [start]
    while todo:
        u = todo.pop()
        for v in _half_swaps(u, cycles, n):
            v = _dehn_cyclic(v, cycles, n)
            key = least_rotation(v)
            if key not in seen:
                if len(seen) >= limit:
                    raise RuntimeError("Dehn normal-form search exceeded its limit")
                seen.add(key)
                todo.append(v)
    return seen


def surface_conjugate(w1: Word, w2: Word, relator: Word) -> bool:
    """Decide conjugacy of ``w1`` and ``w2`` in the one-relator surface group."""
    return bool(dehn_normal_forms(w1, relator) & dehn_normal_forms(w2, relator))


GENUS2_RELATOR = parse_word("[a,b][c,d]", SURFACE)


def random_word(alphabet: Alphabet, length: int, rng: random.Random, reduced: bool = True) -> Word:
    letters: list[Letter] = []
    pool = alphabet.letters()
    while len(letters) < length:
        x = rng.choice(pool)
        if reduced and letters and _cancels(letters[-1], x):
            continue
        letters.append(x)
    return Word(tuple(letters))


def all_words(alphabet: Alphabet, max_length: int, reduced: bool = False):
    """Every word of length <= ``max_length`` (the empty word first)."""
    pool = alphabet.letters()
    level = [()]
    yield Word(())
    for _ in range(max_length):
        nxt = []
        for w in level:
            for x in pool:
                if reduced and w and _cancels(w[-1], x):
                    continue
                nxt.append(w + (x,))
        for w in nxt:
            yield Word(w)
        level = nxt
