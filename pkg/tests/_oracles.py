"""Independent brute-force oracles used only by the tests.

None of these share code with the package: they enumerate edit sequences,
subsequences and polynomials directly.
"""
from __future__ import annotations

import itertools
from functools import lru_cache


def _subseq(x, y) -> bool:
    i = 0
    for s in y:
        if i < len(x) and x[i] == s:
            i += 1
    return i == len(x)


def lcs_enum(x, y) -> int:
    """LCS by trying every subsequence of ``x`` from longest to shortest."""
    x, y = tuple(x), tuple(y)
    for size in range(len(x), -1, -1):
        for idx in itertools.combinations(range(len(x)), size):
            if _subseq(tuple(x[i] for i in idx), y):
                return size
    return 0


def indel_distance(x, y) -> int:
    """Insertion/deletion edit distance by its own recurrence (no LCS)."""
    x, y = tuple(x), tuple(y)

    @lru_cache(maxsize=None)
    def go(i, j):
        if i == len(x):
            return len(y) - j
        if j == len(y):
            return len(x) - i
        if x[i] == y[j]:
            return go(i + 1, j + 1)
        return 1 + min(go(i + 1, j), go(i, j + 1))

    return go(0, 0)


def _one_insertion(words, q):
    out = set()
    for w in words:
        for pos in range(len(w) + 1):
            for s in range(q):
                out.add(w[:pos] + (s,) + w[pos:])
    return out


def _one_deletion(words):
    out = set()
    for w in words:
        for pos in range(len(w)):
            out.add(w[:pos] + w[pos + 1:])
    return out


def reachable_table(start, q, max_ins, max_del):
    """``S[a][b]``: words reachable from ``start`` with <= a insertions and <= b deletions, any order."""
    start = tuple(start)
    S = [[None] * (max_del + 1) for _ in range(max_ins + 1)]
    for a in range(max_ins + 1):
        for b in range(max_del + 1):
            cur = {start}
            if a:
                cur |= S[a - 1][b] | _one_insertion(S[a - 1][b], q)
            if b:
                cur |= S[a][b - 1] | _one_deletion(S[a][b - 1])
            S[a][b] = cur
    return S


def list_by_enumeration(code, q, t_I, t_D):
    """Max over received words of how many codewords reach them via the channel."""
    counts = {}
    for c in code:
        for v in reachable_table(c, q, t_I, t_D)[t_I][t_D]:
            counts[v] = counts.get(v, 0) + 1
    return max(counts.values(), default=0)


def poly_enum(pairs, k, threshold, p):
    """All coefficient tuples (low degree first) of degree < k with enough agreement."""
    out = set()
    for coeffs in itertools.product(range(p), repeat=k):
        agree = 0
        for a, b in pairs:
            val = sum(c * pow(a, i, p) for i, c in enumerate(coeffs)) % p
            agree += val == b
        if agree >= threshold:
            out.add(coeffs)
    return out
