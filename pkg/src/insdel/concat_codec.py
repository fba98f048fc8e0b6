"""Concatenated Reed-Solomon / inner-code construction with windowed list decoding.

The outer code evaluates ``f_s`` at ``alpha_i = 0, ..., n-1`` in F_p; block ``i``
of the codeword is the inner encoding of ``(alpha_i, f_s(alpha_i))``.  Decoding
slides windows over the received word, list-decodes each window against every
inner codeword, list-recovers the outer polynomial from the collected pairs,
and finally keeps only messages whose codeword is within the channel budget.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .field_rs import (
    Scalar,
    SudanRegimeError,
    brute_force_recover,
    is_prime,
    rs_encode,
    sudan_list_recover,
    _res,
)
from .inner_code import InnerCode, inner_encode, inner_list_decode
from .metric import LcsPattern, Word, WordLike

log = logging.getLogger(__name__)

INSDEL = "insdel"
INSERTIONS = "insertions"
DEFAULT_BRUTE_FORCE_CAP = 10**6


class ParameterError(ValueError):
    pass


class DecodingError(RuntimeError):
    pass


@lru_cache(maxsize=None)
def sqrt_upper(x: Fraction, max_den: int = 2**16) -> Fraction:
    """Smallest rational ``>= sqrt(x)`` with denominator ``<= max_den`` (exact if rational)."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("square root of a negative number")
    u, w = x.numerator, x.denominator
    ru, rw = math.isqrt(u), math.isqrt(w)
    if ru * ru == u and rw * rw == w:
        return Fraction(ru, rw)
    best = None
    for b in range(1, max_den + 1):
        target = -(-u * b * b // w)  # a^2 >= u b^2 / w
        a = math.isqrt(target)
        if a * a < target:
            a += 1
        cand = Fraction(a, b)
        if best is None or cand < best:
            best = cand
    return best


def _ceil(x: Fraction) -> int:
    return math.ceil(x)


@dataclass(frozen=True)
class ConcatParams:
    mode: str
    tau_I: Fraction
    tau_D: Fraction
    tau_D_prime: Fraction
    tau_I_prime: Fraction
    r: Fraction
    ell_prime: int
    ell: Fraction
    n: int
    m: int
    p: int
    k_ins: Optional[int] = None
    gamma: Optional[Fraction] = None
    b: Optional[int] = None
    rate_overridden: bool = False

    def __post_init__(self) -> None:
        if self.mode not in (INSDEL, INSERTIONS):
            raise ParameterError(f"unknown mode {self.mode!r}")
        if not is_prime(self.p):
            raise ParameterError(f"p={self.p} is not prime")
        if not 1 <= self.n <= self.p:
            raise ParameterError(f"need 1 <= n <= p for distinct evaluation points, got n={self.n}, p={self.p}")
        if self.m < 1:
            raise ParameterError("inner length m must be positive")
        if self.r <= 0 or self.message_length > self.n:
            raise ParameterError(f"rate {self.r} gives message length {self.message_length} for n={self.n}")
        if self.stride < 1:
            raise ParameterError(f"window stride is zero for m={self.m}; increase m")
        if self.mode == INSERTIONS and self.tau_D != 0:
            raise ParameterError("insertion-only parameters need tau_D = 0")

    # derived quantities used by the decoder
    @property
    def message_length(self) -> int:
        return max(1, _ceil(self.r * self.n))

    @property
    def stride(self) -> int:
        if self.mode == INSDEL:
            return math.floor((1 - self.tau_D_prime) * self.m / 2)
        return self.b

    @property
    def j_max(self) -> int:
        if self.mode == INSDEL:
            return _ceil(2 * (1 + self.tau_I) * self.n / (1 - self.tau_D_prime))
        return math.floor((1 + self.tau_I) * self.n * self.m / self.b)

    @property
    def jp_max(self) -> int:
        if self.mode == INSDEL:
            return _ceil(2 * (1 + self.tau_I_prime) / (1 - self.tau_D_prime))
        return self.k_ins

    @property
    def inner_insertions(self) -> int:
        return math.floor(self.tau_I_prime * self.m)

    @property
    def inner_deletions(self) -> int:
        return math.floor(self.tau_D_prime * self.m) if self.mode == INSDEL else 0

    @property
    def outer_insertions(self) -> int:
        return math.floor(self.tau_I * self.n * self.m)

    @property
    def outer_deletions(self) -> int:
        return math.floor(self.tau_D * self.n * self.m)

    @property
    def threshold(self) -> int:
        if self.mode == INSDEL:
            return _ceil((1 - self.tau_D_prime) * self.n / 2)
        return _ceil(self.gamma * self.n / 2)

    @property
    def pair_cap(self) -> int:
        """Proven bound on the number of collected pairs (assuming inner list size ``ell_prime``)."""
        if self.mode == INSDEL:
            return self.j_max * self.jp_max * self.ell_prime
        return self.n * self.k_ins ** 2 * self.ell_prime

    def length_range(self) -> tuple[int, int]:
        N = self.n * self.m
        lo = math.ceil((1 - self.tau_D) * N)
        hi = math.floor((1 + self.tau_I) * N)
        return lo, hi

    def to_text(self) -> str:
        lines = []
        for f in fields(self):
            value = getattr(self, f.name)
            if value is None:
                text = "none"
            elif isinstance(value, bool):
                text = "true" if value else "false"
            else:
                text = str(value)
            lines.append(f"{f.name} = {text}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ConcatParams":
        raw = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            raw[key.strip()] = value.strip()
        kwargs = {}
        for f in fields(cls):
            if f.name not in raw:
                continue
            value = raw[f.name]
            if value == "none":
                kwargs[f.name] = None
            elif f.name == "mode":
                kwargs[f.name] = value
            elif f.name == "rate_overridden":
                kwargs[f.name] = value == "true"
            elif f.name in ("ell_prime", "n", "m", "p", "k_ins", "b"):
                kwargs[f.name] = int(value)
            else:
                kwargs[f.name] = Fraction(value)
        return cls(**kwargs)


def derive_params(
    tau_I, tau_D, ell_prime: int, n: int, m: int, p: int, override_rate=None
) -> ConcatParams:
    """Parameters for decoding ``tau_I*nm`` insertions and ``tau_D*nm`` deletions.

    ``tau_D' = sqrt(tau_D)`` is rounded up to a rational when irrational.
    ``override_rate`` replaces the outer rate; the list-size guarantee then no
    longer applies, which is recorded in ``rate_overridden``.
    """
    tau_I, tau_D = Fraction(tau_I), Fraction(tau_D)
    if tau_I < 0 or not 0 <= tau_D < 1:
        raise ParameterError("need tau_I >= 0 and 0 <= tau_D < 1")
    if ell_prime < 1:
        raise ParameterError("ell_prime must be >= 1")
    tdp = sqrt_upper(tau_D)
    if tdp >= 1:
        raise ParameterError(f"tau_D' = {tdp} rounds up to 1; tau_D too close to 1")
    tip = 2 * tau_I / (1 - tdp) + (1 - tdp) / 2
    r = (1 - tdp) ** 4 / (32 * (1 + tip) ** 2 * ell_prime)
    ell = 16 * (1 + tip) ** 2 / (1 - tdp) ** 3 * ell_prime
    if override_rate is None:
        if r * n < 1:
            raise ParameterError(
                f"outer rate r={r} leaves r*n={float(r * n):.4g} < 1 message symbols; "
                f"need n >= {_ceil(1 / r)} (or an override rate)"
            )
        rate, overridden = r, False
    else:
        rate, overridden = Fraction(override_rate), True
    return ConcatParams(INSDEL, tau_I, tau_D, tdp, tip, rate, ell_prime, ell, n, m, p,
                        rate_overridden=overridden)


def derive_insertion_params(
    tau_I, gamma, k_ins: int, ell_prime: int, n: int, m: int, p: int, override_rate=None
) -> ConcatParams:
    """Parameters for the insertion-only decoder with window divisor ``k_ins``.

    The inner insertion budget is ``(1 + gamma)(tau_I + b/m)`` so that
    ``tau_I' m >= tau_I m + b`` holds exactly for the integer stride ``b``.
    """
    tau_I, gamma = Fraction(tau_I), Fraction(gamma)
    if tau_I < 0 or not 0 < gamma < 1 or k_ins < 2 or ell_prime < 1:
        raise ParameterError("need tau_I >= 0, 0 < gamma < 1, k >= 2, ell_prime >= 1")
    b = _ceil((1 + tau_I) * m / k_ins)
    tip = (1 + gamma) * (tau_I + Fraction(b, m))
    r = gamma ** 2 / (8 * k_ins ** 2 * ell_prime)
    ell = 4 * k_ins ** 2 * ell_prime / gamma
    if override_rate is None:
        if r * n < 1:
            raise ParameterError(
                f"outer rate r={r} leaves r*n < 1 message symbols; need n >= {_ceil(1 / r)} (or an override rate)"
            )
        rate, overridden = r, False
    else:
        rate, overridden = Fraction(override_rate), True
    return ConcatParams(INSERTIONS, tau_I, Fraction(0), Fraction(0), tip, rate, ell_prime, ell, n, m, p,
                        k_ins=k_ins, gamma=gamma, b=b, rate_overridden=overridden)


def _check_inner(params: ConcatParams, inner: InnerCode) -> None:
    if (inner.m, inner.p) != (params.m, params.p):
        raise ParameterError(
            f"inner code (m={inner.m}, p={inner.p}) does not match params (m={params.m}, p={params.p})"
        )


def evaluation_points(params: ConcatParams) -> list[int]:
    return list(range(params.n))


def concat_encode(params: ConcatParams, inner: InnerCode, s: Sequence[Scalar]) -> Word:
    _check_inner(params, inner)
    if len(s) != params.message_length:
        raise ParameterError(f"message has {len(s)} symbols, params expect {params.message_length}")
    outer = rs_encode([_res(x, params.p) for x in s], evaluation_points(params), params.p)
    out: tuple[int, ...] = ()
    for alpha, beta in zip(evaluation_points(params), outer):
        out += inner_encode(inner, alpha, beta).symbols
    return Word(out, inner.q)


@dataclass
class Diagnostics:
    window_count: int = 0
    pair_count: int = 0
    max_inner_list: int = 0
    pair_cap: int = 0
    candidates: int = 0
    threshold: int = 0
    degree_bound: int = 0
    sudan_regime: bool = False
    used_brute_force: bool = False


@dataclass
class DecodeOutput:
    messages: list[tuple[int, ...]]
    diagnostics: Diagnostics = field(default_factory=Diagnostics)
    pairs: frozenset = frozenset()

    def __contains__(self, s) -> bool:
        return tuple(int(x) for x in s) in self.messages

    def __len__(self) -> int:
        return len(self.messages)


def windows(params: ConcatParams, length: int) -> list[tuple[int, int]]:
    """Distinct 0-based half-open windows ``[s*j, s*(j+j'))`` clamped to the word."""
    s = params.stride
    seen = {}
    for j in range(params.j_max + 1):
        start = s * j
        if start >= length:
            break
        for jp in range(1, params.jp_max + 1):
            end = min(s * (j + jp), length)
            seen.setdefault((start, end), None)
    return list(seen)


def covering_window(params: ConcatParams, span: tuple[int, int]) -> tuple[int, int]:
    """``(j, j')`` of the shortest generated window containing ``span = [a, b)``."""
    a, b = span
    s = params.stride
    j = a // s
    jp = max(1, -(-b // s) - j)
    return j, jp


def _ball_member(codeword: WordLike, v: WordLike, t_I: int, t_D: int) -> bool:
    L = LcsPattern(codeword).lcs(v)
    return len(v) - L <= t_I and len(codeword) - L <= t_D


def _decode(params: ConcatParams, inner: InnerCode, v: WordLike, brute_force_cap: int, threads: int) -> DecodeOutput:
    _check_inner(params, inner)
    v = tuple(v)
    diag = Diagnostics(pair_cap=params.pair_cap, threshold=params.threshold, degree_bound=params.message_length)
    wins = windows(params, len(v))
    diag.window_count = len(wins)

    def decode_window(win):
        a, b = win
        return inner_list_decode(inner, v[a:b], params.inner_insertions, params.inner_deletions)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(decode_window, wins))
    else:
        results = [decode_window(w) for w in wins]
    J = frozenset().union(*results) if results else frozenset()
    diag.max_inner_list = max((len(r) for r in results), default=0)
    diag.pair_count = len(J)

    k, t, p = params.message_length, params.threshold, params.p
    try:
        polys = sudan_list_recover(J, k, t, p)
        diag.sudan_regime = True
    except SudanRegimeError:
        if p ** k > brute_force_cap:
            raise DecodingError(
                f"|J|={len(J)} is outside Sudan's regime (t={t}, k={k}) and p^k={p ** k} "
                f"exceeds the brute-force cap {brute_force_cap}"
            ) from None
        log.info("Sudan regime violated (|J|=%d, t=%d, k=%d); enumerating %d polynomials", len(J), t, k, p ** k)
        polys = brute_force_recover(J, k, t, p)
        diag.used_brute_force = True
    diag.candidates = len(polys)

    messages = []
    for f in polys:
        s = f.padded(k)
        if _ball_member(concat_encode(params, inner, s), v, params.outer_insertions, params.outer_deletions):
            messages.append(s)
    return DecodeOutput(messages, diag, J)


def list_decode_insdel(
    params: ConcatParams,
    inner: InnerCode,
    v: WordLike,
    brute_force_cap: int = DEFAULT_BRUTE_FORCE_CAP,
    threads: int = 1,
) -> DecodeOutput:
    if params.mode != INSDEL:
        raise ParameterError("list_decode_insdel needs insdel-mode parameters")
    lo, hi = params.length_range()
    if not lo <= len(v) <= hi:
        raise ValueError(f"received length {len(v)} outside [{lo}, {hi}]")
    return _decode(params, inner, v, brute_force_cap, threads)


def list_decode_insertions(
    params: ConcatParams,
    inner: InnerCode,
    v: WordLike,
    brute_force_cap: int = DEFAULT_BRUTE_FORCE_CAP,
    threads: int = 1,
) -> DecodeOutput:
    if params.mode != INSERTIONS:
        raise ParameterError("list_decode_insertions needs insertion-mode parameters")
    lo, hi = params.length_range()
    if not lo <= len(v) <= hi:
        raise ValueError(f"received length {len(v)} outside [{lo}, {hi}]")
    return _decode(params, inner, v, brute_force_cap, threads)
