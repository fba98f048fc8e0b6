"""List-size and code-size bounds in the Levenshtein metric.

Every feasibility test and bound is computed with :class:`fractions.Fraction`;
the conditions are strict inequalities, so floats are only used for the
closed forms that genuinely involve square roots.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .metric import Word, levenshtein_distance

Number = Union[int, Fraction]


@dataclass(frozen=True)
class BoundResult:
    feasible: bool
    list_bound: Optional[Fraction] = None

    @property
    def list_bound_floor(self) -> Optional[int]:
        if self.list_bound is None:
            return None
        return math.floor(self.list_bound)

    @classmethod
    def infeasible(cls) -> "BoundResult":
        return cls(False, None)


def _check_ranges(n: int, d: int, t_I: int, t_D: int) -> None:
    if n < 1:
        raise ValueError(f"block length must be positive, got n={n}")
    if not 0 <= d <= 2 * n:
        raise ValueError(f"need 0 <= d <= 2n, got d={d}, n={n}")
    if t_I < 0:
        raise ValueError(f"t_I must be non-negative, got {t_I}")
    if not 0 <= t_D <= n:
        raise ValueError(f"need 0 <= t_D <= n, got t_D={t_D}")


def lemma1_bound(n: int, d: int, t_I: int, t_D: int) -> BoundResult:
    """List-size bound for received words of length exactly ``n + t_I - t_D``."""
    _check_ranges(n, d, t_I, t_D)
    N = n + t_I - t_D
    if N < 1:
        raise ValueError(f"received length n + t_I - t_D must be >= 1, got {N}")
    half = Fraction(d, 2)
    if not half > t_D + Fraction(t_I * (n - t_D), N):
        return BoundResult.infeasible()
    num = N * (half - t_D)
    return BoundResult(True, num / (num - t_I * (n - t_D)))


def johnson_condition(n: int, d: int, t_I: Number, t_D: Number) -> bool:
    """``t_I < (d/2 - t_D)(n - t_D) / (n - d/2)``, with ``d = 2n`` as the limit case."""
    half = Fraction(d, 2)
    if t_D >= half:
        return False
    slack = n - half
    if slack == 0:
        return True
    return t_I < (half - t_D) * (n - t_D) / slack


def johnson_bound(n: int, d: int, t_I: int, t_D: int) -> BoundResult:
    """Johnson-type bound valid for every received length in ``[n - t_D, n + t_I]``."""
    _check_ranges(n, d, t_I, t_D)
    if not johnson_condition(n, d, t_I, t_D):
        return BoundResult.infeasible()
    half = Fraction(d, 2)
    denom = (half - t_D) * (n - t_D) - (n - half) * t_I
    return BoundResult(True, half * (n + t_I) / denom)


def deletion_only_bound(n: int, d: int, t_D: int) -> BoundResult:
    """Deletions alone: unique decoding below ``d/2``, nothing sharper is claimed."""
    _check_ranges(n, d, 0, t_D)
    if Fraction(t_D) < Fraction(d, 2):
        return BoundResult(True, Fraction(1))
    return BoundResult.infeasible()


@dataclass(frozen=True)
class EqualRadius:
    n: int
    d: int

    @property
    def t_equal(self) -> float:
        return self.n - math.sqrt(self.n * (self.n - self.d / 2))

    def admits(self, t: int) -> bool:
        # t < n - sqrt(n(n - d/2))  <=>  n - t > 0 and (n - t)^2 > n(n - d/2)
        return t < self.n and (self.n - t) ** 2 > self.n * (self.n - Fraction(self.d, 2))

    def bound_at(self, t: int) -> Fraction:
        if t < 0 or not self.admits(t):
            raise ValueError(f"t={t} is not below t_equal={self.t_equal:.6f}")
        half = Fraction(self.d, 2)
        value = half * (self.n + t) / ((half - 2 * t) * self.n + t * t)
        if self.d % 2 == 0:
            # denominator is then a positive integer
            assert value <= self.n * self.d
        return value


def equal_radius_bound(n: int, d: int) -> EqualRadius:
    _check_ranges(n, d, 0, 0)
    return EqualRadius(n, d)


# ---------- normalized radii ----------

def _check_delta(delta) -> None:
    if not 0 <= delta < 1:
        raise ValueError(f"delta must lie in [0, 1), got {delta}")


def tau_insdel(delta, rho):
    """Largest normalized ``(t_I + t_D)/n`` at distance ``delta`` with ``t_D = rho * d/2``."""
    _check_delta(delta)
    return delta + (1 - rho) ** 2 * delta ** 2 / (1 - delta)


def tau_ins(delta, rho):
    _check_delta(delta)
    return (1 - rho) * delta * (1 - rho * delta) / (1 - delta)


def tau_del(delta, tau_insertions) -> float:
    _check_delta(delta)
    if tau_insertions < 0:
        raise ValueError("tau_ins must be non-negative")
    return 0.5 * (1 + delta - math.sqrt((1 - delta) * (1 - delta + 4 * tau_insertions)))


@dataclass(frozen=True)
class RadiusProfile:
    delta: Number
    rho: Number = 0
    tau_ins: Number = 0

    def __post_init__(self) -> None:
        _check_delta(self.delta)
        if not 0 <= self.rho < 1:
            raise ValueError(f"rho must lie in [0, 1), got {self.rho}")
        if self.tau_ins < 0:
            raise ValueError("tau_ins must be non-negative")


def radius_curves(profile: RadiusProfile):
    """Return ``(tau_ID, tau_I, tau_D)`` for the profile."""
    return (
        tau_insdel(profile.delta, profile.rho),
        tau_ins(profile.delta, profile.rho),
        tau_del(profile.delta, profile.tau_ins),
    )


DEFAULT_RHOS = (Fraction(0), Fraction(1, 5), Fraction(2, 5), Fraction(3, 5), Fraction(4, 5))
DEFAULT_TAU_INS = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(2))


def binary_landmark_delta(q: int = 2) -> float:
    """Distance ``1 - 2/(q + sqrt q)`` of the known q-ary high-distance family."""
    return 1 - 2 / (q + math.sqrt(q))


def curve_rows(
    figure: int,
    step: Fraction = Fraction(1, 100),
    params: Optional[Sequence[Number]] = None,
    extra_deltas: Iterable[float] = (),
) -> list[tuple]:
    """Rows ``(delta, rho_or_tau_ins, tau_ID, tau_I, tau_D)`` for one figure.

    Figure 1 fills ``tau_ID``, figure 2 ``tau_I`` (both swept over rho), figure 3
    ``tau_D`` (swept over tau_ins); the other columns are ``None``.
    """
    if figure not in (1, 2, 3):
        raise ValueError(f"figure must be 1, 2 or 3, got {figure}")
    step = Fraction(step)
    if not 0 < step < 1:
        raise ValueError("grid step must lie in (0, 1)")
    if params is None:
        params = DEFAULT_TAU_INS if figure == 3 else DEFAULT_RHOS
    deltas: list = []
    k = 0
    while k * step < 1:
        deltas.append(k * step)
        k += 1
    deltas = sorted(set(deltas) | set(extra_deltas), key=float)
    rows = []
    for param in params:
        for delta in deltas:
            if figure == 1:
                rows.append((delta, param, tau_insdel(delta, param), None, None))
            elif figure == 2:
                rows.append((delta, param, None, tau_ins(delta, param), None))
            else:
                rows.append((delta, param, None, None, tau_del(delta, param)))
    return rows


def _fmt(x) -> str:
    if x is None:
        return ""
    return f"{float(x):.10f}"


def curves_csv(figure: int, **kwargs) -> str:
    lines = ["delta,rho_or_tau_ins,tau_ID,tau_I,tau_D"]
    for row in curve_rows(figure, **kwargs):
        lines.append(",".join(_fmt(x) for x in row))
    return "\n".join(lines) + "\n"


# ---------- corollary and code-size bounds ----------

def delta_insdel(tau_I: Number, tau_D: Number) -> Fraction:
    """Distance threshold above which ``(tau_I n, tau_D n)`` list decoding is bounded."""
    tau_I, tau_D = Fraction(tau_I), Fraction(tau_D)
    return 1 - (1 - tau_D) ** 2 / (tau_I + 1 - tau_D)


def summary_bound(tau_I: Number, tau_D: Number, delta: Number) -> BoundResult:
    tau_I, tau_D, delta = Fraction(tau_I), Fraction(tau_D), Fraction(delta)
    if tau_I < 0 or not 0 <= tau_D < 1 or not 0 <= delta <= 1:
        raise ValueError("need tau_I >= 0, 0 <= tau_D < 1, 0 <= delta <= 1")
    gamma = delta - delta_insdel(tau_I, tau_D)
    if gamma <= 0:
        return BoundResult.infeasible()
    return BoundResult(True, delta * (tau_I + 1) / (gamma * (tau_I + 1 - tau_D)))


def plotkin_bound(n: int, d: int, N: int) -> BoundResult:
    """Code-size bound given a common supersequence of length ``N``."""
    if not 1 <= n <= N:
        raise ValueError(f"need 1 <= n <= N, got n={n}, N={N}")
    if not 0 <= d <= 2 * n:
        raise ValueError(f"need 0 <= d <= 2n, got d={d}")
    if not Fraction(d, 2 * n) > 1 - Fraction(n, N):
        return BoundResult.infeasible()
    return BoundResult(True, Fraction(N * d, N * d - 2 * (N - n) * n))


def canonical_supersequence(q: int, n: int) -> Word:
    """``(0, 1, ..., q-1)`` repeated ``n`` times; contains every word of ``[q]^n``."""
    if q < 2 or n < 1:
        raise ValueError("need q >= 2 and n >= 1")
    return Word(tuple(range(q)) * n, q)


# ---------- the u(i, j) relation ----------

@dataclass(frozen=True)
class EditWitness:
    """Deletion positions (1-based) in ``word`` and in ``reference`` reaching a common word."""

    word: Word
    reference: Word
    deletion_positions: frozenset[int]
    reference_deletions: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "deletion_positions", frozenset(self.deletion_positions))
        object.__setattr__(self, "reference_deletions", frozenset(self.reference_deletions))
        for pos, w in ((self.deletion_positions, self.word), (self.reference_deletions, self.reference)):
            if any(not 1 <= k <= len(w) for k in pos):
                raise ValueError(f"positions {sorted(pos)} out of range for {w}")
        if self.residue() != _delete(self.reference, self.reference_deletions):
            raise ValueError("inconsistent witness: the two deletions do not meet")

    def residue(self) -> tuple[int, ...]:
        return _delete(self.word, self.deletion_positions)

    @property
    def is_minimal(self) -> bool:
        size = len(self.deletion_positions) + len(self.reference_deletions)
        return size == levenshtein_distance(self.word, self.reference)


def _delete(w: Word, positions) -> tuple[int, ...]:
    return tuple(s for k, s in enumerate(w, start=1) if k not in positions)


def wz_u_value(wi: EditWitness, wj: EditWitness) -> int:
    if wi.reference != wj.reference:
        raise ValueError("witnesses must share the same reference word")
    Di, Dj = wi.deletion_positions, wj.deletion_positions
    agreeing = {k for k in Di & Dj if k <= len(wi.word) and k <= len(wj.word)
                and wi.word[k - 1] == wj.word[k - 1]}
    return len((Di | Dj) - agreeing) + len(wi.reference_deletions ^ wj.reference_deletions)
