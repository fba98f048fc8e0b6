"""Inner code ``F_p x F_p -> [q]^m`` found by seeded randomized greedy search."""
from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .metric import LcsPattern, Word, WordLike, levenshtein_distance

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**6


class InnerCodeSearchError(RuntimeError):
    def __init__(self, message: str, partial: list[tuple[int, ...]], best_delta: Fraction):
        super().__init__(message)
        self.partial = partial
        self.best_delta = best_delta


@dataclass(frozen=True)
class InnerCode:
    q: int
    m: int
    p: int
    codewords: tuple[tuple[int, ...], ...]
    delta_in: Fraction
    seed: int = 0
    _patterns: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.codewords) != self.p * self.p:
            raise ValueError(f"need p^2 = {self.p * self.p} codewords, got {len(self.codewords)}")
        for w in self.codewords:
            if len(w) != self.m or any(not 0 <= s < self.q for s in w):
                raise ValueError(f"codeword {w} is not in [{self.q}]^{self.m}")
        if len(set(self.codewords)) != len(self.codewords):
            raise ValueError("codewords must be distinct")
        object.__setattr__(self, "_patterns", tuple(LcsPattern(w) for w in self.codewords))

    @property
    def min_distance(self) -> int:
        return minimum_distance(self.codewords)

    def verify(self) -> None:
        """Recompute the pairwise minimum and check it supports ``delta_in``."""
        d = self.min_distance
        if 2 * self.delta_in * self.m > d:
            raise ValueError(f"claimed delta_in={self.delta_in} but min distance is {d}")

    def index(self, alpha: int, beta: int) -> int:
        if not (0 <= alpha < self.p and 0 <= beta < self.p):
            raise ValueError(f"pair ({alpha}, {beta}) outside F_{self.p} x F_{self.p}")
        return alpha * self.p + beta

    def pair(self, index: int) -> tuple[int, int]:
        return divmod(index, self.p)


def minimum_distance(words: Sequence[Sequence[int]]) -> int:
    return min(levenshtein_distance(a, b) for a, b in combinations(words, 2))


def _required_distance(delta_target: Fraction, m: int) -> int:
    # distinct equal-length words are at distance >= 2, and distances are even
    need = max(2, math.ceil(2 * delta_target * m))
    return need + (need % 2)


def search_inner_code(
    q: int, m: int, p: int, delta_target: Fraction | float | int, seed: int = 0, budget: int = DEFAULT_BUDGET
) -> InnerCode:
    """Greedy random search for ``p^2`` words at pairwise distance ``>= 2 * delta_target * m``.

    A candidate is kept iff it is far enough from every kept word.  The search is
    deterministic in ``seed``; running out of ``budget`` draws raises
    :class:`InnerCodeSearchError` carrying the partial code.
    """
    delta_target = Fraction(delta_target)
    if q ** m < p * p:
        raise ValueError(f"cannot fit p^2 = {p * p} codewords into [{q}]^{m}")
    if not 0 <= delta_target < 1:
        raise ValueError("delta_target must lie in [0, 1)")
    need = _required_distance(delta_target, m)
    max_lcs = m - need // 2
    rng = random.Random(seed)
    kept: list[tuple[int, ...]] = []
    patterns: list[LcsPattern] = []
    draws = 0
    while len(kept) < p * p:
        if draws >= budget:
            best = Fraction(minimum_distance(kept), 2 * m) if len(kept) >= 2 else Fraction(1)
            raise InnerCodeSearchError(
                f"budget of {budget} draws exhausted with {len(kept)}/{p * p} codewords "
                f"(distance target {need})",
                kept,
                best,
            )
        draws += 1
        cand = tuple(rng.randrange(q) for _ in range(m))
        if all(pat.lcs(cand) <= max_lcs for pat in patterns):
            kept.append(cand)
            patterns.append(LcsPattern(cand))
    achieved = Fraction(minimum_distance(kept), 2 * m)
    log.debug("inner code q=%d m=%d p=%d: %d draws, delta=%s", q, m, p, draws, achieved)
    return InnerCode(q, m, p, tuple(kept), achieved, seed)


def inner_encode(code: InnerCode, alpha: int, beta: int) -> Word:
    return Word(code.codewords[code.index(int(alpha), int(beta))], code.q)


def inner_list_decode(code: InnerCode, w: WordLike, tI_in: int, tD_in: int) -> set[tuple[int, int]]:
    """All pairs whose codeword reaches ``w`` with ``<= tI_in`` insertions and ``<= tD_in`` deletions."""
    if isinstance(w, Word) and w.q != code.q:
        raise ValueError(f"word over [{w.q}] given to a code over [{code.q}]")
    w = tuple(w)
    need = max(len(w) - tI_in, code.m - tD_in)
    out = set()
    for idx, pat in enumerate(code._patterns):
        if pat.lcs(w) >= need:
            out.add(code.pair(idx))
    return out
