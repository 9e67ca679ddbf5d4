"""Fermat tiles mod p^j: root sets, tile enumeration, box intersections,
theta statistics, bounding lines and lattice points on Fermat curves."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .context import WIDTH_LIMIT, PrimeContext, is_prime, totient_power


@dataclass(frozen=True)
class RootSet:
    """Solutions of x^n = -1 mod p, as powers of the context generator."""

    p: int
    n: int
    a0: int | None
    m: int | None
    exponents: tuple[int, ...]
    roots: tuple[int, ...]

    def __bool__(self) -> bool:
        return bool(self.roots)

    def __len__(self) -> int:
        return len(self.roots)


def minus_one_exponents(n: int, order: int) -> list[int]:
    """All e in [0, order) with n*e = order/2 mod order (order even)."""
    d = math.gcd(n, order)
    half = order // 2
    if half % d:
        return []
    step = order // d
    e0 = (half // d) * pow(n // d, -1, step) % step
    return [e0 + i * step for i in range(d)]


def roots_of_minus_one(ctx: PrimeContext, n: int) -> RootSet:
    """S_n(p), ordered by exponent.

    When 2n | p-1 the exponents are a0 + i*m with a0 = (p-1)/(2n) and
    m = (p-1)/n. Otherwise there are gcd(n, p-1) roots when that gcd
    divides (p-1)/2 (e.g. x = -1 for odd n), and none else.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    p = ctx.p
    exps = tuple(minus_one_exponents(n, p - 1))
    if not exps:
        return RootSet(p, n, None, None, (), ())
    m = (p - 1) // len(exps)
    return RootSet(p, n, exps[0], m, exps, tuple(ctx.exp1(a) for a in exps))


def unit_slopes(ctx: PrimeContext, n: int, j: int) -> list[int]:
    """All z mod p^j with z^n = -1, i.e. the slopes of the unit part of T_n(p; j)."""
    mod = ctx.p**j
    return [pow(ctx.g, e, mod) for e in minus_one_exponents(n, totient_power(ctx.p, j))]


def root_shifts(p: int, n: int) -> list[int]:
    """The exponents a_i = (1+2i)(p-1)/(2n) for i = 0..n-1."""
    if (p - 1) % (2 * n):
        raise ValueError(f"2n={2 * n} does not divide p-1={p - 1}")
    return [(1 + 2 * i) * (p - 1) // (2 * n) for i in range(n)]


@dataclass(frozen=True)
class TileComponent:
    """The line {(a, a*slope)} in Z_{p^j}^2 attached to one root x."""

    p: int
    root: int
    j: int
    slope: int

    @classmethod
    def of(cls, p: int, root: int, j: int) -> TileComponent:
        mod = p**j
        return cls(p, root, j, pow(root, p ** (j - 1), mod))

    def __call__(self, a: int) -> int:
        return a * self.slope % self.p**self.j

    def points(self) -> list[tuple[int, int]]:
        mod = self.p**self.j
        return [(a, a * self.slope % mod) for a in range(mod)]


def tile_membership(ctx: PrimeContext, n: int, j: int, x: int, y: int) -> bool:
    mod = ctx.p**j
    return (pow(x, n, mod) + pow(y, n, mod)) % mod == 0


def tile_points(ctx: PrimeContext, n: int, j: int) -> list[tuple[int, int]]:
    """All (x, y) mod p^j with x^n + y^n = 0, sorted.

    Pairs are stratified by the common p-adic valuation k of x and y. For
    k*n < j the pair is p^k times a unit pair (u, w) with w = u*z mod p^m,
    m = j - k*n, z^n = -1 mod p^m. For k*n >= j every pair works. When
    j <= n and 2n | p-1 this is the union of the lines of slope
    x^(p^(j-1)), x in S_n(p), with (pZ)^2.
    """
    p = ctx.p
    mod = p**j
    if mod >= WIDTH_LIMIT:
        raise ValueError("p^j exceeds the width limit")
    out: set[tuple[int, int]] = set()

    k = 0
    while k * n < j:
        m = j - k * n
        rest = j - k  # units are taken mod p^rest
        free = rest - m  # digits of w not fixed by the line
        mod_m = p**m
        scale = p**k
        for slope in unit_slopes(ctx, n, m):
            for u in range(p**rest):
                if u % p == 0:
                    continue
                w0 = u * slope % mod_m
                for t in range(p**free):
                    out.add((scale * u, scale * (w0 + mod_m * t)))
        k += 1

    step = p ** (-(-j // n))  # both coordinates divisible by p^ceil(j/n)
    if step < mod:
        multiples = range(0, mod, step)
        out.update((x, y) for x in multiples for y in multiples)
    else:
        out.add((0, 0))
    return sorted(out)


def tile_points_reducible(ctx: PrimeContext, n: int, j: int) -> list[tuple[int, int]]:
    """The two-part union {(a, a*x^(p^(j-1)))} + (pZ)^2; exact only for j <= n."""
    p = ctx.p
    mod = p**j
    out = set()
    for x in roots_of_minus_one(ctx, n).roots:
        out.update(TileComponent.of(p, x, j).points())
    multiples = range(0, mod, p)
    out.update((x, y) for x in multiples for y in multiples)
    return sorted(out)


@dataclass(frozen=True)
class BoxIntersection:
    p: int
    n: int
    j: int
    trivial: tuple[tuple[int, int], ...]
    nontrivial: tuple[tuple[int, int], ...]

    @property
    def points(self) -> list[tuple[int, int]]:
        return sorted(self.trivial + self.nontrivial)

    def invertible(self) -> list[tuple[int, int]]:
        return [(x, y) for x, y in self.nontrivial if x % self.p and y % self.p]


def box_intersection(ctx: PrimeContext, n: int, j: int) -> BoxIntersection:
    """Tile points with both coordinates in [0, p]."""
    p = ctx.p
    mod = p**j
    top = min(p, mod - 1)
    found = set()
    # Inside [0, p] the only non-units are 0 and p; a unit paired with a
    # non-unit is never on the tile.
    for slope in unit_slopes(ctx, n, j):
        for a in range(1, top + 1):
            if a % p:
                y = a * slope % mod
                if y <= top:
                    found.add((a, y))
    for x in (0, p):
        for y in (0, p):
            if x <= top and y <= top and tile_membership(ctx, n, j, x, y):
                found.add((x, y))
    corners = {(0, 0), (p, 0), (0, p), (p, p)}
    return BoxIntersection(
        p,
        n,
        j,
        tuple(sorted(found & corners)),
        tuple(sorted(found - corners)),
    )


# -- theta statistics ------------------------------------------------------


def theta_counts(ctx: PrimeContext, n: int, j: int) -> tuple[int, ...]:
    """For each root (ordered by exponent), count a in 1..p with 0 < f(a) < p."""
    p = ctx.p
    out = []
    for x in roots_of_minus_one(ctx, n).roots:
        comp = TileComponent.of(p, x, j)
        out.append(sum(1 for a in range(1, p + 1) if 0 < comp(a) < p))
    return tuple(out)


@dataclass
class ThetaTable:
    n: int
    j: int
    rows: dict[int, tuple[int, ...]] = field(default_factory=dict)
    errors: dict[int, str] = field(default_factory=dict)

    def sums(self) -> dict[int, int]:
        return {p: sum(row) for p, row in self.rows.items()}

    def symmetric_primes(self) -> list[int]:
        """Primes whose row reads the same backwards (theta_i = theta_{n-1-i})."""
        return [p for p, row in self.rows.items() if row == row[::-1]]

    def to_rows(self) -> list[list[int]]:
        return [[p, *row, sum(row)] for p, row in sorted(self.rows.items())]

    def header(self) -> list[str]:
        return ["p", *(f"theta_{i}" for i in range(self.n)), "sum"]


def theta_statistics(n: int, j: int, primes, cache_dir=None) -> ThetaTable:
    table = ThetaTable(n, j)
    for p in sorted(primes):
        if not is_prime(p) or p < 3:
            table.errors[p] = "not an odd prime"
            continue
        if (p - 1) % (2 * n):
            table.errors[p] = f"2n={2 * n} does not divide p-1"
            continue
        ctx = PrimeContext.create(p, j_max=max(j, 1), cache_dir=cache_dir)
        table.rows[p] = theta_counts(ctx, n, j)
    return table


def primes_in_range(lo: int, hi: int, n: int | None = None) -> list[int]:
    """Odd primes in [lo, hi], optionally only those with 2n | p-1."""
    return [
        p
        for p in range(max(lo, 3), hi + 1)
        if is_prime(p) and (n is None or (p - 1) % (2 * n) == 0)
    ]


# -- bounding lines --------------------------------------------------------

# Points lie on or above the line. Fixed by checking the line
# a2 = (-23 a1 + 17^3)/47 against the component of 9 in T_4(17; 3):
# 288 of the 289 points with a1 in 1..289 sit above it, one below.
BOUND_SIDE = "above"


@dataclass(frozen=True)
class BoundingLine:
    """a2 = (m*a1 + p^j) / q."""

    m: int
    q: int
    j: int
    p: int

    def value(self, a1: int) -> float:
        return (self.m * a1 + self.p**self.j) / self.q

    def side(self, a1: int, a2: int) -> int:
        """Sign of q*a2 - (m*a1 + p^j): +1 above, 0 on, -1 below."""
        d = self.q * a2 - (self.m * a1 + self.p**self.j)
        return (d > 0) - (d < 0)


@dataclass
class LineCheck:
    line: BoundingLine
    above: int
    on: int
    below: int
    violations: list[tuple[int, int]]

    @property
    def valid(self) -> bool:
        return not self.violations


def component_points(ctx: PrimeContext, j: int, x: int, a1_range) -> list[tuple[int, int]]:
    """(a, f(a)) for a in the closed range, skipping the origin a = 0."""
    comp = TileComponent.of(ctx.p, x, j)
    lo, hi = a1_range
    return [(a, comp(a)) for a in range(max(lo, 1), hi + 1)]


def check_bounding_line(
    ctx: PrimeContext, j: int, x: int, line: BoundingLine, a1_range, side: str = BOUND_SIDE
) -> LineCheck:
    want = 1 if side == "above" else -1
    counts = {1: 0, 0: 0, -1: 0}
    bad = []
    for a1, a2 in component_points(ctx, j, x, a1_range):
        s = line.side(a1, a2)
        counts[s] += 1
        if s == -want:
            bad.append((a1, a2))
    return LineCheck(line, counts[1], counts[0], counts[-1], bad)


def calibrate_bound_side(ctx: PrimeContext, j: int, x: int, line: BoundingLine, a1_range) -> str:
    """Side on which the majority of component points fall."""
    chk = check_bounding_line(ctx, j, x, line, a1_range)
    return "above" if chk.above >= chk.below else "below"


def bounding_line_search(
    ctx: PrimeContext, n: int, j: int, x: int, a1_range=None, side: str = BOUND_SIDE
) -> BoundingLine | None:
    """Smallest q in 1..p (then smallest |m| with m^2 < p^j) giving a valid bound."""
    p = ctx.p
    if x not in roots_of_minus_one(ctx, n).roots:
        raise ValueError(f"{x} is not a root of x^{n} = -1 mod {p}")
    if a1_range is None:
        a1_range = (0, p)
    pts = component_points(ctx, j, x, a1_range)
    top = p**j
    mlim = math.isqrt(top - 1)  # largest |m| with m^2 < p^j
    ms = sorted(range(-mlim, mlim + 1), key=lambda v: (abs(v), v))
    for q in range(1, p + 1):
        for m in ms:
            if side == "above":
                ok = all(q * a2 >= m * a1 + top for a1, a2 in pts)
            else:
                ok = all(q * a2 <= m * a1 + top for a1, a2 in pts)
            if ok:
                return BoundingLine(m, q, j, p)
    return None


# -- Fermat curves ---------------------------------------------------------


def curve_lattice_points(n: int, z: int) -> list[tuple[int, int]]:
    """Non-negative integer points on x^n + y^n = z^n."""
    if n < 2 or z < 1:
        raise ValueError("need n >= 2 and z >= 1")
    target = z**n
    if target >= WIDTH_LIMIT:
        raise OverflowError(f"{z}^{n} exceeds the width limit")
    out = []
    y = z
    for x in range(z + 1):
        rest = target - x**n
        while y > 0 and y**n > rest:
            y -= 1
        if y**n == rest:
            out.append((x, y))
    return out

