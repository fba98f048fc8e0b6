import random

import pytest

from insdel.bounds import plotkin_bound
from insdel.channel_oracle import (
    OracleCapExceeded,
    brute_force_list,
    corrupt,
    list_size_profile,
    max_code_search,
    max_list_size,
)
from insdel.metric import CodeBook, Word, in_insdel_ball, levenshtein_distance

from _oracles import list_by_enumeration


def test_corrupt_identity():
    x = Word.parse("0120120", 3)
    v, ledger = corrupt(x, 0, 0, seed=1)
    assert v == x
    assert ledger.delete_events == [] and ledger.insert_events == []


@pytest.mark.parametrize("seed", range(30))
def test_corrupt_properties(seed):
    rng = random.Random(seed)
    q = rng.choice([2, 3, 4])
    x = Word(tuple(rng.randrange(q) for _ in range(rng.randint(1, 40))), q)
    tD = rng.randint(0, len(x))
    tI = rng.randint(0, 10)
    v, ledger = corrupt(x, tI, tD, seed=seed, block_length=rng.randint(1, 8))
    assert len(v) == len(x) + tI - tD
    assert in_insdel_ball(x, v, tI, tD)
    assert ledger.replay(x) == v.symbols
    assert sum(ledger.block_deletions) == tD
    assert sum(ledger.block_insertions) == tI
    # block spans tile the output and each span holds that block's survivors plus insertions
    assert ledger.block_spans[0][0] == 0 and ledger.block_spans[-1][1] == len(v)
    m = ledger.block_length
    for b, (start, end) in enumerate(ledger.block_spans):
        original = min(m, len(x) - b * m)
        assert end - start == original - ledger.block_deletions[b] + ledger.block_insertions[b]
    assert corrupt(x, tI, tD, seed=seed, block_length=m) == (v, ledger)


def test_corrupt_ledger_json_is_one_based():
    x = Word.parse("0000", 2)
    _, ledger = corrupt(x, 1, 1, seed=4)
    data = ledger.to_json()
    assert data["deletions"] == [i + 1 for i in ledger.delete_events]
    assert all(1 <= pos <= 4 for pos, _ in data["insertions"])


def test_corrupt_errors():
    with pytest.raises(ValueError):
        corrupt(Word.parse("01", 2), 0, 3, seed=0)


def test_appendix_code_list():
    code = CodeBook.from_words(["000000", "011100", "100011"], 2)
    v = Word.parse("01100", 2)
    # each codeword reaches 01100 with <= 3 deletions and <= 2 insertions
    assert brute_force_list(code, v, 2, 3) == set(code.words)
    assert brute_force_list(code, v, 3, 2) == {Word.parse("011100", 2)}
    assert brute_force_list(code, v, 0, 0) == set()
    assert brute_force_list(code, Word.parse("011100", 2), 0, 0) == {Word.parse("011100", 2)}


@pytest.mark.parametrize("seed", range(12))
def test_max_list_size_matches_edit_enumeration(seed):
    rng = random.Random(seed)
    q = rng.choice([2, 3])
    n = rng.randint(2, 4)
    words = {tuple(rng.randrange(q) for _ in range(n)) for _ in range(rng.randint(2, 5))}
    code = CodeBook.from_words(sorted(words), q)
    profile = list_size_profile(code, 2, 2)
    for (a, b), (size, witness) in profile.items():
        assert size == list_by_enumeration(code.words, q, a, b)
        assert len(brute_force_list(code, witness, a, b)) == size
        assert max_list_size(code, a, b)[0] == size


def test_max_list_size_small_code():
    code = CodeBook.from_words(["00", "11"], 2)
    size, witness = max_list_size(code, 1, 1)
    assert size == 2
    assert brute_force_list(code, witness, 1, 1) == set(code.words)


def test_oracle_cap():
    code = CodeBook.from_words(["0000", "1111"], 2)
    with pytest.raises(OracleCapExceeded):
        max_list_size(code, 3, 0, cap=10)


def test_max_code_search():
    size, code = max_code_search(2, 4, 6)
    assert size == 2  # [DERIVED: branch and bound, regression constant]
    assert size <= plotkin_bound(4, 6, 8).list_bound
    assert code.min_dist >= 6
    size, code = max_code_search(2, 2, 4)
    assert size == 2 and set(map(str, code)) == {"00", "11"}
    assert max_code_search(3, 2, 0)[0] == 9
    with pytest.raises(OracleCapExceeded):
        max_code_search(3, 6, 4)


def test_max_code_search_against_exhaustive_subsets():
    import itertools

    for q, n, d in [(2, 3, 4), (2, 4, 4), (3, 2, 4), (2, 3, 6)]:
        words = list(itertools.product(range(q), repeat=n))
        best = 1
        for size in range(2, len(words) + 1):
            found = any(
                all(levenshtein_distance(a, b) >= d for a, b in itertools.combinations(sub, 2))
                for sub in itertools.combinations(words, size)
            )
            if not found:
                break
            best = size
        assert max_code_search(q, n, d)[0] == best
