"""Linear forms A_j^a, the zero sets Z_j(a), the double-recursion ("zipper")
solver and the H-profile diagnostics."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .context import PrimeContext
from .digits import DigitVector, all_digit_vectors, as_digits, carry, h_eval
from .tiles import root_shifts


class NonlinearError(ArithmeticError):
    """h is not affine in its last digit for some prefix."""


class ZeroSlopeError(ArithmeticError):
    pass


@dataclass(frozen=True)
class LinearForm:
    """h_j^a(s; prefix, r) = slope * (r - root) mod p for every r in Z_p."""

    slope: int
    root: int
    a: int
    j: int
    s: int
    prefix: tuple[int, ...]


def linearize(ctx: PrimeContext, a: int, j: int, s: int, prefix=()) -> LinearForm:
    p = ctx.p
    prefix = tuple(as_digits(ctx, prefix).digits) if prefix else ()
    if len(prefix) != j - 1:
        raise ValueError(f"level {j} needs {j - 1} prefix digits, got {len(prefix)}")
    values = [h_eval(ctx, a, j, s, prefix + (r,)) for r in range(p)]
    slope = (values[1] - values[0]) % p
    if slope == 0:
        raise ZeroSlopeError(f"zero slope at a={a}, j={j}, s={s}, prefix={prefix}")
    root = -values[0] * pow(slope, -1, p) % p
    for r, v in enumerate(values):
        if v != slope * (r - root) % p:
            raise NonlinearError(
                f"h_{j}^{a}(s={s}; {prefix}, r) not affine: r={r} gives {v}, "
                f"expected {slope * (r - root) % p}"
            )
    return LinearForm(slope, root, a, j, s, prefix)


def a_value(ctx: PrimeContext, a: int, j: int, s: int, prefix=()) -> int:
    """A_j^a(s; prefix): the unique zero of h_j^a in the last digit."""
    return linearize(ctx, a, j, s, prefix).root


def a_table(ctx: PrimeContext, a: int) -> list[int]:
    """A_1^a(s) for s in Z_{p-1}."""
    return [a_value(ctx, a, 1, s) for s in range(ctx.p - 1)]


@dataclass
class S0Result:
    a: int
    j: int
    s0: int | None
    slopes: list[int]
    mismatches: dict[int, int]  # candidate s0 -> number of s where it fails


def extract_s0(ctx: PrimeContext, a: int, j: int) -> S0Result:
    """Find s0 with slope(s) = Exp_1(s + a + s0) for all s (zero prefix)."""
    p = ctx.p
    zero = (0,) * (j - 1)
    slopes = [linearize(ctx, a, j, s, zero).slope for s in range(p - 1)]
    mismatches = {}
    for cand in range(p - 1):
        mismatches[cand] = sum(
            1 for s, c in enumerate(slopes) if c != ctx.exp1(s + a + cand)
        )
    hits = [c for c, miss in mismatches.items() if miss == 0]
    return S0Result(a, j, hits[0] if hits else None, slopes, mismatches)


@dataclass
class IdentityReport:
    a: int
    j: int
    agree: int = 0
    disagree: int = 0
    entries: list[tuple[int, tuple[int, ...], int, int]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.disagree == 0


def shifted_a_value(ctx: PrimeContext, a: int, j: int, s: int, prefix=()) -> int:
    """A_j^0(s+a; r_i + a + c) - (a + c) mod p with c the carry of s + a."""
    p = ctx.p
    c = carry(s + a, p)
    moved = tuple((d + a + c) % p for d in prefix)
    return (a_value(ctx, 0, j, (s + a) % (p - 1), moved) - (a + c)) % p


def a_shift_identity_check(ctx: PrimeContext, a: int, j: int, sample=None) -> IdentityReport:
    """Evaluate both sides of A_j^a(s; r) = A_j^0(s+a; r+a+c) - (a+c)."""
    p = ctx.p
    if sample is None:
        if j == 1:
            sample = [(s, ()) for s in range(p - 1)]
        else:
            sample = [(s, v.digits) for s in range(p - 1) for v in all_digit_vectors(p, j - 1)]
    rep = IdentityReport(a, j)
    for s, prefix in sample:
        prefix = tuple(prefix)
        lhs = a_value(ctx, a, j, s, prefix)
        rhs = shifted_a_value(ctx, a, j, s, prefix)
        rep.entries.append((s, prefix, lhs, rhs))
        if lhs == rhs:
            rep.agree += 1
        else:
            rep.disagree += 1
    return rep


def forced_digits(ctx: PrimeContext, a: int, s: int, j: int) -> DigitVector:
    """The chain r_{k-1} = A_k^a(s; r_0..r_{k-2}) for k = 1..j."""
    digits: tuple[int, ...] = ()
    for k in range(1, j + 1):
        digits += (a_value(ctx, a, k, s, digits),)
    return DigitVector(ctx.p, digits)


def z_set(ctx: PrimeContext, a: int, j: int) -> list[tuple[int, DigitVector]]:
    """Z_j(a): one forced digit chain per s in Z_{p-1}."""
    return [(s, forced_digits(ctx, a, s, j)) for s in range(ctx.p - 1)]


def z_intersection(ctx: PrimeContext, a: int, b: int, j: int) -> list[tuple[int, DigitVector]]:
    other = {(s, r.digits) for s, r in z_set(ctx, b, j)}
    return [(s, r) for s, r in z_set(ctx, a, j) if (s, r.digits) in other]


# -- the zipper solver -----------------------------------------------------


@dataclass(frozen=True)
class ZipperSolution:
    a: int
    s: int
    digits: DigitVector
    level: int

    def exponent(self, p: int) -> int:
        """s + (p-1) r: the exponent of the small coordinate at level + 1."""
        return self.s + (p - 1) * self.digits.value


@dataclass
class ZipperResult:
    p: int
    g: int
    n: int
    max_level: int
    solutions: dict[int, list[ZipperSolution]] = field(default_factory=dict)
    # shift -> {s: (level where the two recursions disagree, A^0 - A^a mod p)}
    discrepancies: dict[int, dict[int, tuple[int, int]]] = field(default_factory=dict)

    def survivors(self, a: int, level: int) -> list[ZipperSolution]:
        return [z for z in self.solutions.get(a, []) if z.level >= level]

    def certified_empty(self) -> bool:
        return all(not self.survivors(a, self.max_level) for a in self.solutions)

    def to_json_obj(self) -> list[dict]:
        out = []
        for a in sorted(self.solutions):
            for z in self.solutions[a]:
                out.append(
                    {
                        "a": z.a,
                        "s": z.s,
                        "digits": list(z.digits.digits),
                        "level": z.level,
                        "p": self.p,
                        "g": self.g,
                        "n": self.n,
                    }
                )
        return out


def zipper_solve(
    ctx: PrimeContext, n: int, shifts=None, max_level: int | None = None
) -> ZipperResult:
    """Run both digit recursions in lockstep from every s, for each shift.

    A branch dies at the first level where A_k^0 and A_k^a differ; branches
    that clear at least one level are kept with the level they reached.
    """
    p = ctx.p
    all_shifts = root_shifts(p, n)
    if shifts is None:
        shifts = all_shifts
    if max_level is None:
        max_level = n - 1
    if max_level + 1 > ctx.j_max:
        raise ValueError(f"level {max_level} needs j_max >= {max_level + 1}")
    res = ZipperResult(p, ctx.g, n, max_level)
    for a in shifts:
        sols, gaps = [], {}
        for s in range(p - 1):
            digits: tuple[int, ...] = ()
            for k in range(1, max_level + 1):
                lo = a_value(ctx, 0, k, s, digits)
                hi = a_value(ctx, a, k, s, digits)
                if lo != hi:
                    gaps[s] = (k, (lo - hi) % p)
                    break
                digits += (lo,)
            if digits:
                sols.append(ZipperSolution(a, s, DigitVector(p, digits), len(digits)))
        res.solutions[a] = sols
        res.discrepancies[a] = gaps
    return res


def mock_point(ctx: PrimeContext, sol: ZipperSolution) -> tuple[int, int]:
    """The pair (Exp(t), Exp(t + a p^L)) at level L + 1, t = s + (p-1) r."""
    p = ctx.p
    j = sol.level + 1
    t = sol.exponent(p)
    return ctx.exp(j, t), ctx.exp(j, t + sol.a * p**sol.level)


# -- H profiles ------------------------------------------------------------


@dataclass
class HProfile:
    """A re-indexed H function t -> H(Log_1(t)) and its forward difference."""

    i: int
    variant: str  # "0" or "a"
    a: int
    p: int
    values: dict[int, int]
    derivative: dict[int, int]

    def zeros(self) -> set[int]:
        return {t for t, v in self.values.items() if v == 0}


def _h_function(ctx: PrimeContext, a: int, i: int, variant: str, s: int) -> int:
    # H_i^a evaluates h^a along the A^0 chain; H_i^0 evaluates h^0 along the A^a chain.
    if variant == "a":
        chain = forced_digits(ctx, 0, s, i)
        return h_eval(ctx, a, i, s, chain)
    chain = forced_digits(ctx, a, s, i)
    return h_eval(ctx, 0, i, s, chain)


def derivative(values: dict[int, int], p: int) -> dict[int, int]:
    """D(F)(t) = F(t+1) - F(t) mod p for t = 1..p-2."""
    return {t: (values[t + 1] - values[t]) % p for t in range(1, p - 1)}


def h_profiles(ctx: PrimeContext, a: int, levels=(1, 2)) -> list[HProfile]:
    p = ctx.p
    out = []
    for i in levels:
        for variant in ("0", "a"):
            by_s = [_h_function(ctx, a, i, variant, s) for s in range(p - 1)]
            values = {t: by_s[ctx.log1(t)] for t in range(1, p)}
            out.append(HProfile(i, variant, a, p, values, derivative(values, p)))
    return out


def common_zeros(profiles: list[HProfile]) -> set[int]:
    if not profiles:
        return set()
    zs = profiles[0].zeros()
    for prof in profiles[1:]:
        zs &= prof.zeros()
    return zs


@dataclass
class SemilinearitySummary:
    histogram: list[tuple[int, int]]  # (derivative value, count), ascending value
    distinct: int
    longest_run: int
    longest_run_value: int | None

    def dominant(self, k: int = 3) -> list[tuple[int, int]]:
        return sorted(self.histogram, key=lambda vc: (-vc[1], vc[0]))[:k]


def semilinearity_report(profile: HProfile) -> SemilinearitySummary:
    ts = sorted(profile.derivative)
    vals = [profile.derivative[t] for t in ts]
    hist = sorted(Counter(vals).items())
    best, best_val, run = 0, None, 0
    for k, v in enumerate(vals):
        run = run + 1 if k and vals[k - 1] == v and ts[k - 1] + 1 == ts[k] else 1
        if run > best:
            best, best_val = run, v
    return SemilinearitySummary(hist, len(hist), best, best_val)
