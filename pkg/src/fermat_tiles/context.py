"""Primes, primitive roots and level-wise Exp/Log over the unit groups mod p^j."""

from __future__ import annotations

import csv
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path

log = logging.getLogger(__name__)

WIDTH_LIMIT = 2**63
CACHE_ENV = "FERMAT_TILES_CACHE"


class NonInvertibleError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` by trial division, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def totient_power(p: int, j: int) -> int:
    """Order of the unit group mod p^j, i.e. (p-1) * p^(j-1)."""
    return (p - 1) * p ** (j - 1)


def _generates(g: int, p: int, modulus: int, order: int) -> bool:
    if g % p == 0:
        return False
    return all(pow(g, order // q, modulus) != 1 for q in prime_factors(order))


def find_primitive_root(p: int) -> int:
    """Smallest primitive root mod p, bumped by p if it fails to generate mod p^2.

    A generator mod p^2 generates every higher power of an odd prime, so the
    result is primitive at every level.
    """
    if p < 3 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    g = 2
    while not _generates(g, p, p, p - 1):
        g += 1
    if not _generates(g, p, p * p, totient_power(p, 2)):
        log.info("smallest primitive root %d is not primitive mod %d^2; using %d", g, p, g + p)
        g += p
    return g


def _default_j_max(p: int) -> int:
    j = 1
    while j < 8 and p ** (j + 1) < WIDTH_LIMIT:
        j += 1
    return j


@dataclass(frozen=True)
class PrimeContext:
    """An odd prime with a generator valid at every level up to ``j_max``.

    Only the level-1 log table is stored; higher levels use modular
    exponentiation and digit lifting.
    """

    p: int
    g: int
    j_max: int
    log1_table: tuple[int, ...] = field(repr=False)  # index x -> Log_1(x); slot 0 unused

    @classmethod
    def create(
        cls,
        p: int,
        g: int | None = None,
        j_max: int | None = None,
        cache_dir: str | os.PathLike | None = None,
    ) -> PrimeContext:
        if p < 3 or not is_prime(p):
            raise ValueError(f"{p} is not an odd prime")
        if g is None:
            g = find_primitive_root(p)
        if not 2 <= g or g % p == 0:
            raise ValueError(f"g={g} is not a unit mod {p}")
        if not _generates(g, p, p, p - 1):
            raise ValueError(f"g={g} is not a primitive root mod {p}")
        if not _generates(g, p, p * p, totient_power(p, 2)):
            raise ValueError(f"g={g} is primitive mod {p} but not mod {p}^2")
        if j_max is None:
            j_max = _default_j_max(p)
        if j_max < 1:
            raise ValueError("j_max must be positive")
        if p**j_max >= WIDTH_LIMIT:
            raise ValueError(f"{p}^{j_max} exceeds the 63-bit width limit")

        if cache_dir is None:
            cache_dir = os.environ.get(CACHE_ENV)
        table = None
        if cache_dir is not None:
            table = read_log_cache(cache_path(cache_dir, p, g), p, g)
        if table is None:
            table = _build_log1(p, g)
            if cache_dir is not None:
                write_log_cache(cache_path(cache_dir, p, g), p, g, table)
        return cls(p, g, j_max, table)

    def modulus(self, j: int) -> int:
        self._check_level(j)
        return self.p**j

    def phi(self, j: int) -> int:
        self._check_level(j)
        return totient_power(self.p, j)

    def _check_level(self, j: int) -> None:
        if not 1 <= j <= self.j_max:
            raise ValueError(f"level {j} outside 1..{self.j_max}")

    def exp(self, j: int, s: int) -> int:
        """Exp_j(s) = g^s mod p^j; ``s`` is reduced mod phi(p^j)."""
        self._check_level(j)
        return pow(self.g, s % totient_power(self.p, j), self.p**j)

    def log(self, j: int, x: int) -> int:
        """Log_j(x): the exponent s in [0, phi(p^j)) with g^s = x mod p^j."""
        self._check_level(j)
        p = self.p
        x %= p**j
        if x % p == 0:
            raise NonInvertibleError(f"{x} is not invertible mod {p}^{j}")
        s = self.log1_table[x % p]
        # Lift one digit at a time: s_{k+1} = s_k + t*phi(p^k), t in 0..p-1.
        for k in range(1, j):
            mod = p ** (k + 1)
            step = totient_power(p, k)
            target = x % mod
            base = pow(self.g, s, mod)
            mult = pow(self.g, step, mod)
            for t in range(p):
                if base == target:
                    break
                base = base * mult % mod
            else:  # pragma: no cover - impossible for a valid generator
                raise AssertionError(f"log lift failed at level {k + 1}")
            s += t * step
        return s

    def log1(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise NonInvertibleError(f"0 is not invertible mod {self.p}")
        return self.log1_table[x]

    def exp1(self, s: int) -> int:
        return pow(self.g, s % (self.p - 1), self.p)


def _build_log1(p: int, g: int) -> tuple[int, ...]:
    table = [0] * p
    x = 1
    for s in range(p - 1):
        table[x] = s
        x = x * g % p
    return tuple(table)


# -- log-table cache -------------------------------------------------------
#
# Layout:
#   p,g,j
#   <p>,<g>,1
#   x,s
#   1,0
#   ...


def cache_path(cache_dir: str | os.PathLike, p: int, g: int) -> Path:
    return Path(cache_dir) / f"log1_p{p}_g{g}.csv"


def write_log_cache(path: Path, p: int, g: int, table: tuple[int, ...]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    with open(tmp, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["p", "g", "j"])
        w.writerow([p, g, 1])
        w.writerow(["x", "s"])
        for x in range(1, p):
            w.writerow([x, table[x]])
    os.replace(tmp, path)


def read_log_cache(path: Path, p: int, g: int) -> tuple[int, ...] | None:
    """Load a cached level-1 table, or None if missing, mismatched or corrupt."""
    if not path.exists():
        return None
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        if rows[0] != ["p", "g", "j"] or rows[2] != ["x", "s"]:
            raise ValueError("bad header")
        if [int(v) for v in rows[1]] != [p, g, 1]:
            raise ValueError("key mismatch")
        table = [0] * p
        seen = set()
        for x_str, s_str in rows[3:]:
            x, s = int(x_str), int(s_str)
            if not 1 <= x < p or not 0 <= s < p - 1 or pow(g, s, p) != x:
                raise ValueError(f"round trip fails at x={x}")
            table[x] = s
            seen.add(x)
        if len(seen) != p - 1:
            raise ValueError("incomplete table")
    except (ValueError, IndexError, OSError) as exc:
        log.warning("rejecting log cache %s: %s", path, exc)
        return None
    return tuple(table)
