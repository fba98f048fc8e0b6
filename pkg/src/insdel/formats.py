"""Plain-text file formats for words, codebooks, inner codes and codec parameters."""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Union

from .concat_codec import ConcatParams
from .inner_code import InnerCode
from .metric import CodeBook, Word

PathLike = Union[str, Path]


class FormatError(ValueError):
    pass


def format_word(w, q: int) -> str:
    return str(w if isinstance(w, Word) else Word(tuple(w), q))


def parse_word(line: str, q: int) -> Word:
    try:
        return Word.parse(line, q)
    except ValueError as exc:
        raise FormatError(f"bad word {line.strip()!r} over [{q}]: {exc}") from None


def _header(line: str) -> dict[str, int]:
    out = {}
    for part in line.split():
        key, _, value = part.partition("=")
        if not value:
            raise FormatError(f"bad header field {part!r}")
        out[key] = int(value)
    return out


def format_codebook(code: CodeBook) -> str:
    lines = [f"q={code.q} n={code.n}"]
    lines += [format_word(w, code.q) for w in code]
    return "\n".join(lines) + "\n"


def parse_codebook(text: str) -> CodeBook:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty codebook file")
    try:
        head = _header(lines[0])
        q, n = head["q"], head["n"]
    except (KeyError, ValueError):
        raise FormatError(f"codebook header must be 'q=<q> n=<n>', got {lines[0]!r}") from None
    words = [parse_word(ln, q) for ln in lines[1:]]
    if any(len(w) != n for w in words):
        raise FormatError(f"every codeword must have length n={n}")
    return CodeBook.from_words(words, q)


def format_inner_code(code: InnerCode) -> str:
    d = code.delta_in
    lines = [f"{code.q} {code.m} {code.p} {d.numerator} {d.denominator} {code.seed}"]
    lines += [format_word(w, code.q) for w in code.codewords]
    return "\n".join(lines) + "\n"


def parse_inner_code(text: str) -> InnerCode:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty inner code file")
    try:
        q, m, p, num, den, seed = (int(t) for t in lines[0].split())
    except ValueError:
        raise FormatError(f"inner code header must be 'q m p delta_num delta_den seed', got {lines[0]!r}") from None
    words = tuple(parse_word(ln, q).symbols for ln in lines[1:])
    try:
        return InnerCode(q, m, p, words, Fraction(num, den), seed)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def read_word_file(path: PathLike, q: int) -> Word:
    lines = [ln for ln in Path(path).read_text().splitlines() if ln.strip()]
    if len(lines) != 1:
        raise FormatError(f"{path}: expected exactly one word, found {len(lines)} lines")
    return parse_word(lines[0], q)


def read_codebook(path: PathLike) -> CodeBook:
    return parse_codebook(Path(path).read_text())


def read_inner_code(path: PathLike) -> InnerCode:
    return parse_inner_code(Path(path).read_text())


def read_params(path: PathLike) -> ConcatParams:
    try:
        return ConcatParams.from_text(Path(path).read_text())
    except (TypeError, ValueError) as exc:
        raise FormatError(f"{path}: {exc}") from None
