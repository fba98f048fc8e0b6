"""Levenshtein (insertion/deletion only) metric primitives.

Words are sequences of integer symbols in ``range(q)``.  Substitutions are not
an atomic edit here, so ``d_L(x, y) = |x| + |y| - 2 * lcs(x, y)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence, Union


class AlphabetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Word:
    """An immutable word over the alphabet ``{0, ..., q-1}``."""

    symbols: tuple[int, ...]
    q: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "symbols", tuple(int(s) for s in self.symbols))
        if self.q < 2:
            raise ValueError(f"alphabet size must be >= 2, got {self.q}")
        for s in self.symbols:
            if not 0 <= s < self.q:
                raise ValueError(f"symbol {s} outside alphabet [0, {self.q})")

    @classmethod
    def parse(cls, text: str, q: int) -> "Word":
        """Parse ``"0110"`` (q <= 10) or ``"3,11,0"`` (any q)."""
        text = text.strip()
        if not text:
            return cls((), q)
        if "," in text or q > 10:
            return cls(tuple(int(t) for t in text.split(",")), q)
        return cls(tuple(int(ch) for ch in text), q)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return Word(self.symbols[idx], self.q)
        return self.symbols[idx]

    def __add__(self, other: "Word") -> "Word":
        _check_alphabet(self, other)
        return Word(self.symbols + other.symbols, self.q)

    def __str__(self) -> str:
        if self.q <= 10:
            return "".join(str(s) for s in self.symbols)
        return ",".join(str(s) for s in self.symbols)


WordLike = Union[Word, Sequence[int]]


def _check_alphabet(x: WordLike, y: WordLike) -> None:
    if isinstance(x, Word) and isinstance(y, Word) and x.q != y.q:
        raise AlphabetMismatch(f"alphabet sizes differ: {x.q} != {y.q}")


def _syms(x: WordLike) -> tuple[int, ...]:
    return x.symbols if isinstance(x, Word) else tuple(x)


def lcs(x: WordLike, y: WordLike) -> int:
    """Length of a longest common subsequence (two-row DP)."""
    _check_alphabet(x, y)
    a, b = _syms(x), _syms(y)
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return 0
    prev = [0] * (len(b) + 1)
    for ca in a:
        cur = [0]
        for j, cb in enumerate(b):
            if ca == cb:
                cur.append(prev[j] + 1)
            else:
                cur.append(cur[j] if cur[j] > prev[j + 1] else prev[j + 1])
        prev = cur
    return prev[-1]


def levenshtein_distance(x: WordLike, y: WordLike) -> int:
    return len(x) + len(y) - 2 * lcs(x, y)


def is_subsequence(x: WordLike, y: WordLike) -> bool:
    """True iff ``x`` can be obtained from ``y`` by deletions only."""
    _check_alphabet(x, y)
    it = iter(_syms(y))
    return all(s in it for s in _syms(x))


def in_insdel_ball(c: WordLike, v: WordLike, t_I: int, t_D: int) -> bool:
    """Membership ``c in B_L(v, t_D, t_I)``.

    ``c`` must be reachable from ``v`` by at most ``t_D`` insertions and at most
    ``t_I`` deletions; equivalently ``v`` arises from ``c`` through a channel
    making at most ``t_I`` insertions and ``t_D`` deletions.
    """
    if t_I < 0 or t_D < 0:
        raise ValueError("edit budgets must be non-negative")
    L = lcs(c, v)
    return len(v) - L <= t_I and len(c) - L <= t_D


class LcsPattern:
    """Bit-parallel LCS of one fixed word against many others.

    Each query costs ``O(|text|)`` big-integer operations instead of the
    ``O(|pattern| * |text|)`` cells of the DP; used in the hot loops of the
    decoders and oracles.
    """

    __slots__ = ("length", "_masks", "_full")

    def __init__(self, pattern: WordLike) -> None:
        syms = _syms(pattern)
        self.length = len(syms)
        masks: dict[int, int] = {}
        for i, s in enumerate(syms):
            masks[s] = masks.get(s, 0) | (1 << i)
        self._masks = masks
        self._full = (1 << self.length) - 1

    def lcs(self, text: WordLike) -> int:
        v = self._full
        masks = self._masks
        for s in _syms(text):
            u = v & masks.get(s, 0)
            v = ((v + u) | (v - u)) & self._full
        return self.length - bin(v).count("1")


@dataclass(frozen=True)
class CodeBook:
    """A finite set of equal-length words with its minimum Levenshtein distance.

    Duplicates are dropped.  A one-word code gets ``min_dist = 2n`` (no pair
    constrains it); ``min_code_distance`` still rejects it.
    """

    words: tuple[Word, ...]
    q: int
    n: int
    min_dist: int = field(init=False)

    def __post_init__(self) -> None:
        words = tuple(dict.fromkeys(self.words))
        for w in words:
            if w.q != self.q:
                raise AlphabetMismatch(f"word {w} has alphabet {w.q}, code has {self.q}")
            if len(w) != self.n:
                raise ValueError(f"word {w} has length {len(w)}, code has n={self.n}")
        object.__setattr__(self, "words", words)
        object.__setattr__(self, "min_dist", _min_distance(words) if len(words) >= 2 else 2 * self.n)

    @classmethod
    def from_words(cls, words: Iterable[WordLike], q: int) -> "CodeBook":
        ws = [w if isinstance(w, Word) else Word(tuple(w), q) for w in words]
        if not ws:
            raise ValueError("empty code")
        return cls(tuple(ws), q, len(ws[0]))

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __contains__(self, w) -> bool:
        return w in self.words


def _min_distance(words: Sequence[WordLike]) -> int:
    return min(levenshtein_distance(a, b) for a, b in combinations(words, 2))


def min_code_distance(code: CodeBook | Sequence[WordLike]) -> int:
    words = code.words if isinstance(code, CodeBook) else list(code)
    if len(words) < 2:
        raise ValueError("minimum distance needs at least two codewords")
    return _min_distance(words)
