"""Base-p digits of Exp: the digit functions g_j, the digit series of Exp and
the shifted digit functions h_j^a."""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .context import PrimeContext, totient_power


@dataclass(frozen=True)
class DigitVector:
    """r = r_0 + r_1 p + ... + r_{j-1} p^(j-1) with every r_i in [0, p)."""

    p: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if any(not 0 <= d < self.p for d in self.digits):
            raise ValueError(f"digits {self.digits} out of range for p={self.p}")

    @classmethod
    def from_int(cls, value: int, p: int, length: int) -> DigitVector:
        if not 0 <= value < p**length:
            raise ValueError(f"{value} does not fit in {length} base-{p} digits")
        out = []
        for _ in range(length):
            value, d = divmod(value, p)
            out.append(d)
        return cls(p, tuple(out))

    @property
    def value(self) -> int:
        return sum(d * self.p**i for i, d in enumerate(self.digits))

    def __len__(self) -> int:
        return len(self.digits)

    def extend(self, digit: int) -> DigitVector:
        return DigitVector(self.p, self.digits + (digit,))


def as_digits(ctx: PrimeContext, r) -> DigitVector:
    if isinstance(r, DigitVector):
        return r
    return DigitVector(ctx.p, tuple(r))


def all_digit_vectors(p: int, length: int) -> Iterable[DigitVector]:
    """Every vector of the given length, r_0 varying slowest."""
    for ds in itertools.product(range(p), repeat=length):
        yield DigitVector(p, ds)


def digit_g(ctx: PrimeContext, j: int, t: int) -> int:
    """(Exp_{j+1}(t) - Exp_j(t mod phi(p^j))) / p^j, the j-th base-p digit of Exp_{j+1}(t)."""
    p = ctx.p
    hi = ctx.exp(j + 1, t)
    lo = ctx.exp(j, t % totient_power(p, j))
    q, rem = divmod(hi - lo, p**j)
    if rem:
        raise AssertionError(f"inexact digit quotient at level {j}, t={t}: context is broken")
    return q


@dataclass(frozen=True)
class SeriesDigits:
    s: int
    coefficients: tuple[int, ...]

    def partial_sum(self, p: int, j: int) -> int:
        return sum(c * p**i for i, c in enumerate(self.coefficients[:j]))


def exp_series(ctx: PrimeContext, s: int, j_max: int) -> SeriesDigits:
    """Digits c_0..c_{j_max-1} with sum c_i p^i = Exp_{j_max}(s)."""
    p = ctx.p
    if not 0 <= s < totient_power(p, j_max):
        raise ValueError(f"s={s} out of range for level {j_max}")
    coeffs = [ctx.exp1(s)]
    for i in range(1, j_max):
        coeffs.append(digit_g(ctx, i, s % totient_power(p, i + 1)))
    return SeriesDigits(s, tuple(coeffs))


def combined_exponent(ctx: PrimeContext, a: int, j: int, s: int, r) -> int:
    """t = s + (p-1) r + a p^j reduced mod phi(p^(j+1))."""
    p = ctx.p
    r = as_digits(ctx, r)
    if len(r) != j:
        raise ValueError(f"expected {j} digits, got {len(r)}")
    return (s + (p - 1) * r.value + a * p**j) % totient_power(p, j + 1)


def h_eval(ctx: PrimeContext, a: int, j: int, s: int, r) -> int:
    """h_j^a(s; r_0..r_{j-1}) = g_j(s + (p-1) r + a p^j)."""
    return digit_g(ctx, j, combined_exponent(ctx, a, j, s, r))


def h_matrix(ctx: PrimeContext, a: int, j: int, s: int | None = None, prefix=()) -> list[list[int]]:
    """Value grids of h.

    With ``s`` None and j == 1: rows s in Z_{p-1}, columns r_0.
    With ``s`` fixed: rows the digit r_{j-2}, columns r_{j-1}, the earlier
    digits taken from ``prefix``.
    """
    p = ctx.p
    if s is None:
        if j != 1:
            raise ValueError("an s-by-r grid only exists at level 1")
        return [[h_eval(ctx, a, 1, s_, (r,)) for r in range(p)] for s_ in range(p - 1)]
    if j == 1:
        return [[h_eval(ctx, a, 1, s, (r,)) for r in range(p)]]
    prefix = tuple(prefix)
    if len(prefix) != j - 2:
        raise ValueError(f"need {j - 2} leading digits")
    return [
        [h_eval(ctx, a, j, s, prefix + (r0, r1)) for r1 in range(p)]
        for r0 in range(p)
    ]


# -- the shift experiment --------------------------------------------------


def carry(m: int, p: int) -> int:
    """(m - [m]_{p-1}) / (p-1) for m >= 0."""
    return m // (p - 1)


@dataclass
class ReadingResult:
    agree: int = 0
    disagree: int = 0
    first_counterexample: tuple | None = None

    @property
    def holds(self) -> bool:
        return self.disagree == 0


@dataclass
class ShiftReport:
    p: int
    a: int
    j: int
    total: int = 0
    readings: dict[str, ReadingResult] = field(default_factory=dict)


def shifted_arguments(p: int, a: int, s: int, r: DigitVector, reading: str):
    """Right-hand arguments of the shift identity under one reading.

    ``digitwise``: each digit becomes (r_i + a + c) mod p, no carries.
    ``carry``: sum (r_i + a + c) p^i with carries, truncated to j digits.
    """
    c = carry(s + a, p)
    s2 = (s + a) % (p - 1)
    j = len(r)
    if reading == "digitwise":
        return s2, DigitVector(p, tuple((d + a + c) % p for d in r.digits))
    if reading == "carry":
        total = sum((d + a + c) * p**i for i, d in enumerate(r.digits)) % p**j
        return s2, DigitVector.from_int(total, p, j)
    raise ValueError(reading)


def shift_lemma_report(
    ctx: PrimeContext, a: int, j: int, sample: Iterable[tuple[int, Sequence[int]]] | None = None
) -> ShiftReport:
    """Compare h_j^a(s; r) with h_j^0(s+a; r_i + a + r(s+a)) on a sample.

    The default sample is the whole domain Z_{p-1} x Z_p^j.
    """
    p = ctx.p
    if sample is None:
        sample = ((s, r) for s in range(p - 1) for r in all_digit_vectors(p, j))
    rep = ShiftReport(p, a, j)
    rep.readings = {"digitwise": ReadingResult(), "carry": ReadingResult()}
    for s, r in sample:
        r = as_digits(ctx, r)
        lhs = h_eval(ctx, a, j, s, r)
        rep.total += 1
        for name, res in rep.readings.items():
            s2, r2 = shifted_arguments(p, a, s, r, name)
            rhs = h_eval(ctx, 0, j, s2, r2)
            if lhs == rhs:
                res.agree += 1
            else:
                res.disagree += 1
                if res.first_counterexample is None:
                    res.first_counterexample = (s, r.digits, lhs, rhs)
    return rep
