"""Brute-force reference computations, kept independent of the package."""

from collections import defaultdict

from sympy import discrete_log, n_order


def power_by_multiplication(g, s, mod):
    x = 1
    for _ in range(s):
        x = x * g % mod
    return x


def log_oracle(p, g, j, x):
    return discrete_log(p**j, x, g)


def is_generator(g, mod, order):
    return n_order(g, mod) == order


def roots_oracle(p, n):
    return {x for x in range(1, p) if (pow(x, n) + 1) % p == 0}


def tile_oracle(p, n, j):
    """{(x, y) : x^n + y^n = 0 mod p^j}, grouped by the value of y^n."""
    mod = p**j
    by_power = defaultdict(list)
    for y in range(mod):
        by_power[pow(y, n, mod)].append(y)
    out = set()
    for x in range(mod):
        for y in by_power[(-pow(x, n, mod)) % mod]:
            out.add((x, y))
    return out


def digit(value, p, i):
    return value // p**i % p


def h_oracle(p, g, a, j, s, r_value):
    """j-th base-p digit of g^(s + (p-1) r + a p^j) mod p^(j+1)."""
    e = s + (p - 1) * r_value + a * p**j
    return digit(pow(g, e, p ** (j + 1)), p, j)


def z_set_oracle(p, g, a, j):
    """All (s, r) with h_k^a(s; r_0..r_{k-1}) = 0 for every k <= j."""
    out = set()
    for s in range(p - 1):
        for r in range(p**j):
            if all(h_oracle(p, g, a, k, s, r % p**k) == 0 for k in range(1, j + 1)):
                out.add((s, tuple(digit(r, p, i) for i in range(j))))
    return out
