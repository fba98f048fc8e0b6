"""Prime-field arithmetic, Reed-Solomon encoding and Sudan list recovery.

Polynomials are stored as tuples of residues, low degree first.  The Sudan
step interpolates a bivariate ``Q(x, y)`` by Gaussian elimination over F_p and
extracts its ``y``-roots of the form ``y - f(x)`` with Roth-Ruckenstein
recursion.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union


class FieldMismatch(ValueError):
    pass


class SudanRegimeError(ValueError):
    """``threshold**2 <= 2 * k * |J|``: Sudan's agreement guarantee does not apply."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    return all(p % f for f in range(3, math.isqrt(p) + 1, 2))


def next_prime(n: int) -> int:
    """Smallest prime ``>= n``."""
    p = max(2, n)
    while not is_prime(p):
        p += 1
    return p


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(value % self.p, self)

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(a, self) for a in range(self.p)]

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: PrimeField

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.field.p:
            raise ValueError(f"{self.value} is not a canonical residue mod {self.field.p}")

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"F_{self.field.p} vs F_{other.field.p}")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def _make(self, v: int) -> "FieldElement":
        return FieldElement(v % self.field.p, self.field)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._make(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._make(self.value - o)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._make(o - self.value)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._make(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._make(-self.value)

    def inv(self) -> "FieldElement":
        return self._make(self.field.inv(self.value))

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._make(self.value * self.field.inv(o))

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        return self._make(pow(self.value, e, self.field.p))

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.field.p})"


Scalar = Union[int, FieldElement]


def _res(x: Scalar, p: int) -> int:
    if isinstance(x, FieldElement):
        if x.field.p != p:
            raise FieldMismatch(f"F_{x.field.p} vs F_{p}")
        return x.value
    return int(x) % p


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class Polynomial:
    """Univariate polynomial over F_p, coefficients low degree first."""

    coeffs: tuple[int, ...]
    p: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _trim(c % self.p for c in self.coeffs))

    @classmethod
    def from_elements(cls, coefficients: Iterable[Scalar], p: int) -> "Polynomial":
        return cls(tuple(_res(c, p) for c in coefficients), p)

    @property
    def degree(self) -> float:
        """Degree, with ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def padded(self, k: int) -> tuple[int, ...]:
        if len(self.coeffs) > k:
            raise ValueError(f"degree {self.degree} does not fit {k} coefficients")
        return self.coeffs + (0,) * (k - len(self.coeffs))

    def coefficients(self, k: Optional[int] = None) -> list[FieldElement]:
        F = PrimeField(self.p)
        return [F(c) for c in (self.coeffs if k is None else self.padded(k))]

    def __call__(self, x: Scalar) -> int:
        x = _res(x, self.p)
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        m = max(len(a), len(b))
        return Polynomial(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(m)), self.p)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(_poly_mul(self.coeffs, other.coeffs, self.p), self.p)

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coeffs) or "0"


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def lagrange_interpolate(points: Sequence[tuple[Scalar, Scalar]], p: int) -> Polynomial:
    """The unique polynomial of degree ``< len(points)`` through the points."""
    xs = [_res(x, p) for x, _ in points]
    ys = [_res(y, p) for _, y in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation points must be distinct")
    total = [0] * len(xs)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = [1]
        denom = 1
        for j, xj in enumerate(xs):
            if j != i:
                basis = _poly_mul(basis, [(-xj) % p, 1], p)
                denom = denom * (xi - xj) % p
        scale = yi * pow(denom, p - 2, p) % p
        for t, c in enumerate(basis):
            total[t] = (total[t] + scale * c) % p
    return Polynomial(tuple(total), p)


def rs_encode(message: Sequence[Scalar], points: Sequence[Scalar], p: int) -> list[int]:
    """Evaluate ``f_s(X) = s_1 + s_2 X + ...`` at each evaluation point."""
    pts = [_res(a, p) for a in points]
    if len(set(pts)) != len(pts):
        raise ValueError("evaluation points must be distinct")
    if len(message) > len(pts):
        raise ValueError(f"message length {len(message)} exceeds code length {len(pts)}")
    if len(pts) > p:
        raise ValueError(f"code length {len(pts)} exceeds field size {p}")
    f = Polynomial.from_elements(message, p)
    return [f(a) for a in pts]


# ---------- list recovery ----------

PairSet = frozenset  # of (alpha, beta) residue pairs


def agreement(f: Polynomial, pairs: Iterable[tuple[int, int]]) -> int:
    return sum(1 for a, b in pairs if f(a) == b)


def brute_force_recover(pairs: Iterable[tuple[int, int]], k: int, threshold: int, p: int) -> list[Polynomial]:
    """Every polynomial of degree ``< k`` agreeing with ``threshold`` pairs, by enumeration."""
    pairs = frozenset((a % p, b % p) for a, b in pairs)
    out = []
    for coeffs in itertools.product(range(p), repeat=k):
        f = Polynomial(coeffs, p)
        if agreement(f, pairs) >= threshold:
            out.append(f)
    return out


def _monomials(weight: int, D: int) -> list[tuple[int, int]]:
    """``x^i y^j`` with ``i + weight*j < D``."""
    out = []
    j = 0
    while weight * j < D:
        out.extend((i, j) for i in range(D - weight * j))
        j += 1
    return out


def _nullspace_vector(rows: list[list[int]], ncols: int, p: int) -> Optional[list[int]]:
    """A nonzero solution of ``rows @ x = 0`` over F_p, or None."""
    mat = [r[:] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][c], p - 2, p)
        mat[r] = [v * inv % p for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                factor = mat[i][c]
                row_r = mat[r]
                mat[i] = [(vi - factor * vr) % p for vi, vr in zip(mat[i], row_r)]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    free = next((c for c in range(ncols) if c not in pivots), None)
    if free is None:
        return None
    x = [0] * ncols
    x[free] = 1
    for i, c in enumerate(pivots):
        x[c] = (-mat[i][free]) % p
    return x


def _interpolate(pairs: Sequence[tuple[int, int]], k: int, p: int) -> list[list[int]]:
    """Nonzero ``Q`` vanishing on all pairs with (1, k-1)-weighted degree minimal.

    Returned as ``Q[j]`` = coefficient list (in ``x``) of ``y^j``.
    """
    weight = k - 1
    D = 1
    while len(_monomials(weight, D)) <= len(pairs):
        D += 1
    monos = _monomials(weight, D)
    rows = []
    for a, b in pairs:
        rows.append([pow(a, i, p) * pow(b, j, p) % p for i, j in monos])
    sol = _nullspace_vector(rows, len(monos), p)
    assert sol is not None  # more unknowns than equations
    ydeg = max(j for _, j in monos)
    Q = [[0] * D for _ in range(ydeg + 1)]
    for (i, j), c in zip(monos, sol):
        Q[j][i] = c
    return Q


def _strip(Q: list[list[int]]) -> list[list[int]]:
    Q = [list(_trim(row)) for row in Q]
    while Q and not Q[-1]:
        Q.pop()
    return Q


def _shift(Q: list[list[int]], gamma: int, p: int) -> list[list[int]]:
    """``Q(x, x*y + gamma)`` divided by the largest power of ``x`` dividing it."""
    ydeg = len(Q) - 1
    out = [[0] * (max((len(r) for r in Q), default=0) + ydeg + 1) for _ in range(ydeg + 1)]
    gpow = [pow(gamma, e, p) for e in range(ydeg + 1)]
    for j, row in enumerate(Q):
        for t in range(j + 1):
            coef = math.comb(j, t) * gpow[j - t] % p
            if not coef:
                continue
            # contributes coef * x^t * row(x) to y^t
            dst = out[t]
            for i, c in enumerate(row):
                if c:
                    dst[i + t] = (dst[i + t] + coef * c) % p
    out = _strip(out)
    shift = min((next(i for i, c in enumerate(r) if c) for r in out if r), default=0)
    return [r[shift:] for r in out]


def _y_roots(Q: list[list[int]], k: int, p: int) -> list[tuple[int, ...]]:
    """Coefficient tuples of all ``f`` with ``deg f < k`` and ``Q(x, f(x)) = 0``."""
    found: list[tuple[int, ...]] = []

    def recurse(Qc: list[list[int]], prefix: tuple[int, ...]) -> None:
        if len(prefix) == k:
            found.append(prefix)
            return
        at_zero = [row[0] if row else 0 for row in Qc]
        for gamma in range(p):
            acc = 0
            for c in reversed(at_zero):
                acc = (acc * gamma + c) % p
            if acc == 0:
                recurse(_shift(Qc, gamma, p), prefix + (gamma,))

    Q = _strip(Q)
    shift = min((next(i for i, c in enumerate(r) if c) for r in Q if r), default=0)
    recurse([r[shift:] for r in Q], ())
    return found


def sudan_list_recover(
    pairs: Iterable[tuple[Scalar, Scalar]], k: int, threshold: int, p: int
) -> list[Polynomial]:
    """All ``f`` with ``deg f < k`` agreeing with at least ``threshold`` pairs.

    Requires ``threshold**2 > 2*k*|J|``; the result then has at most
    ``floor(sqrt(2|J|/k))`` entries.  Output is sorted by coefficients.
    """
    J = sorted({(_res(a, p), _res(b, p)) for a, b in pairs})
    if k < 1:
        raise ValueError("degree bound k must be >= 1")
    if threshold * threshold <= 2 * k * len(J):
        raise SudanRegimeError(
            f"threshold {threshold} too small for |J|={len(J)}, k={k}: need t^2 > {2 * k * len(J)}"
        )
    if k == 1:
        # weighted degree ignores y: count the support of each constant directly
        counts: dict[int, int] = {}
        for _, b in J:
            counts[b] = counts.get(b, 0) + 1
        return [Polynomial((b,), p) for b in sorted(counts) if counts[b] >= threshold]
    Q = _interpolate(J, k, p)
    out = []
    for coeffs in sorted(set(_y_roots(Q, k, p))):
        f = Polynomial(coeffs, p)
        if agreement(f, J) >= threshold:
            out.append(f)
    return out
