"""Insertion/deletion channel simulator and exhaustive oracles."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .metric import CodeBook, Word, WordLike, in_insdel_ball, levenshtein_distance

DEFAULT_ENUM_CAP = 2_000_000
DEFAULT_CODE_SEARCH_CAP = 243  # 3^5


class OracleCapExceeded(RuntimeError):
    pass


@dataclass
class CorruptionLedger:
    """What the channel did.

    Deletions are indices into the input (applied together); insertions are
    ``(position, symbol)`` applied one after another to the shrunken word.
    All positions are 0-based here; :meth:`to_json` converts to 1-based.
    """

    delete_events: list[int]
    insert_events: list[tuple[int, int]]
    block_length: Optional[int] = None
    block_deletions: list[int] = field(default_factory=list)
    block_insertions: list[int] = field(default_factory=list)
    block_spans: list[tuple[int, int]] = field(default_factory=list)

    def replay(self, x: WordLike) -> tuple[int, ...]:
        dels = set(self.delete_events)
        cur = [s for i, s in enumerate(x) if i not in dels]
        for pos, sym in self.insert_events:
            cur.insert(pos, sym)
        return tuple(cur)

    def to_json(self) -> dict:
        out = {
            "deletions": [i + 1 for i in self.delete_events],
            "insertions": [[pos + 1, sym] for pos, sym in self.insert_events],
        }
        if self.block_length is not None:
            out["block_length"] = self.block_length
            out["block_deletions"] = list(self.block_deletions)
            out["block_insertions"] = list(self.block_insertions)
            out["block_spans"] = [[a + 1, b] for a, b in self.block_spans]
        return out


def corrupt(
    x: Word, t_I: int, t_D: int, seed: int, block_length: Optional[int] = None
) -> tuple[Word, CorruptionLedger]:
    """Apply exactly ``t_D`` random deletions, then ``t_I`` random insertions.

    With ``block_length`` the ledger also attributes every edit to a block of
    the input; an inserted symbol belongs to the block of its left neighbour
    (the first block if there is none), so blocks stay contiguous in the output.
    """
    if t_I < 0 or t_D < 0:
        raise ValueError("edit counts must be non-negative")
    if t_D > len(x):
        raise ValueError(f"cannot delete {t_D} symbols from a word of length {len(x)}")
    rng = random.Random(seed)
    deletions = sorted(rng.sample(range(len(x)), t_D))
    dels = set(deletions)
    m = block_length
    labels = [i // m if m else 0 for i in range(len(x)) if i not in dels]
    cur = [s for i, s in enumerate(x) if i not in dels]
    inserts = []
    for _ in range(t_I):
        pos = rng.randint(0, len(cur))
        sym = rng.randrange(x.q)
        inserts.append((pos, sym))
        cur.insert(pos, sym)
        labels.insert(pos, labels[pos - 1] if pos > 0 else 0)
    ledger = CorruptionLedger(deletions, inserts, block_length)
    if m:
        nblocks = -(-len(x) // m)
        ledger.block_deletions = [0] * nblocks
        for i in deletions:
            ledger.block_deletions[i // m] += 1
        sizes = [0] * nblocks
        for b in labels:
            sizes[b] += 1
        originals = [min(m, len(x) - b * m) for b in range(nblocks)]
        ledger.block_insertions = [sizes[b] - originals[b] + ledger.block_deletions[b] for b in range(nblocks)]
        start = 0
        for b in range(nblocks):
            ledger.block_spans.append((start, start + sizes[b]))
            start += sizes[b]
    return Word(tuple(cur), x.q), ledger


def brute_force_list(code: CodeBook, v: WordLike, t_I: int, t_D: int) -> set[Word]:
    return {c for c in code if in_insdel_ball(c, v, t_I, t_D)}


# ---------- exhaustive maximum list size ----------

def _all_words(q: int, N: int) -> np.ndarray:
    if N == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((q,) * N, dtype=np.int64).reshape(N, -1).T
    return np.ascontiguousarray(grids)


def _lcs_against_all(c: tuple[int, ...], texts: np.ndarray, q: int) -> np.ndarray:
    """Bit-parallel LCS of ``c`` with every row of ``texts`` at once."""
    n = len(c)
    if n > 62:
        raise ValueError("pattern too long for 64-bit lanes")
    full = np.uint64((1 << n) - 1)
    masks = np.zeros(q, dtype=np.uint64)
    for i, s in enumerate(c):
        masks[s] |= np.uint64(1 << i)
    v = np.full(texts.shape[0], full, dtype=np.uint64)
    for j in range(texts.shape[1]):
        u = v & masks[texts[:, j]]
        v = ((v + u) | (v - u)) & full
    return n - np.bitwise_count(v).astype(np.int64)


def _lcs_tables(code: CodeBook, lengths: range, cap: int):
    total = sum(code.q ** N for N in lengths)
    if total > cap:
        raise OracleCapExceeded(f"{total} received words exceed the enumeration cap {cap}")
    for N in lengths:
        texts = _all_words(code.q, N)
        table = np.stack([_lcs_against_all(c.symbols, texts, code.q) for c in code.words], axis=1)
        yield N, texts, table


def list_size_profile(
    code: CodeBook, max_tI: int, max_tD: int, cap: int = DEFAULT_ENUM_CAP
) -> dict[tuple[int, int], tuple[int, Word]]:
    """``max_list_size`` for every budget pair up to ``(max_tI, max_tD)`` in one sweep."""
    n = code.n
    lengths = range(max(0, n - max_tD), n + max_tI + 1)
    best = {(a, b): (-1, None) for a in range(max_tI + 1) for b in range(max_tD + 1)}
    for N, texts, table in _lcs_tables(code, lengths, cap):
        for (a, b), (cur, _) in best.items():
            if not n - b <= N <= n + a:
                continue
            # c in B_L(v, b, a)  <=>  N - L <= a  and  n - L <= b
            member = (table >= N - a) & (table >= n - b)
            counts = member.sum(axis=1)
            i = int(np.argmax(counts))
            if counts[i] > cur:
                best[(a, b)] = (int(counts[i]), Word(tuple(int(s) for s in texts[i]), code.q))
    return best


def max_list_size(code: CodeBook, t_I: int, t_D: int, cap: int = DEFAULT_ENUM_CAP) -> tuple[int, Word]:
    """Largest ``|B_L(v, t_D, t_I) & C|`` over every ``v`` of length ``n - t_D .. n + t_I``."""
    if t_I < 0 or t_D < 0:
        raise ValueError("budgets must be non-negative")
    n = code.n
    lengths = range(max(0, n - t_D), n + t_I + 1)
    best, witness = -1, None
    for N, texts, table in _lcs_tables(code, lengths, cap):
        counts = ((table >= N - t_I) & (table >= n - t_D)).sum(axis=1)
        i = int(np.argmax(counts))
        if counts[i] > best:
            best, witness = int(counts[i]), Word(tuple(int(s) for s in texts[i]), code.q)
    return best, witness


# ---------- maximum code search ----------

def _max_clique(adj: list[int], order: list[int]) -> list[int]:
    """Branch and bound with greedy-colouring bounds; ``adj`` holds bitmask rows."""
    best: list[int] = []

    def colour_sort(cands: list[int]) -> tuple[list[int], list[int]]:
        # assign greedy colour classes; vertex's colour bounds the clique it can extend
        verts, bounds = [], []
        remaining = list(cands)
        colour = 0
        while remaining:
            colour += 1
            klass_mask = 0
            rest = []
            for v in remaining:
                if adj[v] & klass_mask:
                    rest.append(v)
                else:
                    klass_mask |= 1 << v
                    verts.append(v)
                    bounds.append(colour)
            remaining = rest
        return verts, bounds

    def expand(clique: list[int], cands: list[int]) -> None:
        nonlocal best
        verts, bounds = colour_sort(cands)
        for idx in range(len(verts) - 1, -1, -1):
            if len(clique) + bounds[idx] <= len(best):
                return
            v = verts[idx]
            new_clique = clique + [v]
            new_cands = [u for u in verts[:idx] if adj[v] >> u & 1]
            if new_cands:
                expand(new_clique, new_cands)
            elif len(new_clique) > len(best):
                best = new_clique

    expand([], order)
    return best


def max_code_search(q: int, n: int, d: int, cap: int = DEFAULT_CODE_SEARCH_CAP) -> tuple[int, CodeBook]:
    """A maximum code in ``[q]^n`` with pairwise Levenshtein distance ``>= d``."""
    if q ** n > cap:
        raise OracleCapExceeded(f"q^n = {q ** n} exceeds the search cap {cap}")
    words = [tuple(w) for w in itertools.product(range(q), repeat=n)]
    if d <= 2:
        return len(words), CodeBook.from_words(words, q)
    adj = [0] * len(words)
    for i, j in itertools.combinations(range(len(words)), 2):
        if levenshtein_distance(words[i], words[j]) >= d:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    order = sorted(range(len(words)), key=lambda v: -bin(adj[v]).count("1"))
    clique = _max_clique(adj, order)
    chosen = sorted(words[i] for i in clique)
    return len(chosen), CodeBook.from_words(chosen, q)
