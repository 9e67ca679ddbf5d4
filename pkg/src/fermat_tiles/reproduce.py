"""Regenerate every published table into one directory and grade it."""

from __future__ import annotations

import time
from dataclasses import dataclass
from pathlib import Path

from . import published as pub
from .context import PrimeContext
from .digits import h_matrix
from .io import incidence_matrix, scale_residues, write_csv, write_json, write_pgm
from .tiles import (
    BoundingLine,
    box_intersection,
    check_bounding_line,
    component_points,
    primes_in_range,
    roots_of_minus_one,
    theta_statistics,
    tile_points,
)
from .zipper import (
    a_table,
    common_zeros,
    extract_s0,
    h_profiles,
    semilinearity_report,
    z_intersection,
    zipper_solve,
)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"


def _grid(m):
    return tuple(tuple(row) for row in m)


def reproduce_all(out_root, cache_dir=None, stamp: str | None = None) -> tuple[Path, list[Check]]:
    if stamp is None:
        stamp = time.strftime("%Y%m%d-%H%M%S")
    out = Path(out_root) / f"run-{stamp}"
    out.mkdir(parents=True, exist_ok=True)
    if cache_dir is None:
        cache_dir = Path(out_root) / "cache"
    checks: list[Check] = []

    def ctx(p, **kw):
        return PrimeContext.create(p, cache_dir=cache_dir, **kw)

    # roots of -1
    c17 = ctx(17)
    rs = roots_of_minus_one(c17, 4)
    write_csv(out / "roots_p17_n4.csv", ["exponent", "root"], zip(rs.exponents, rs.roots))
    checks.append(Check("roots_p17_n4", rs.roots == pub.ROOTS_P17_N4, " ".join(map(str, rs.roots))))

    # tiles
    c5 = ctx(5)
    t = tile_points(c5, 2, 2)
    write_csv(out / "tile_p5_n2_j2.csv", ["x", "y"], t)
    for p, n in ((5, 2), (7, 3), (17, 4)):
        cp = ctx(p)
        write_pgm(out / f"tile_p{p}_n{n}_j1.pgm", incidence_matrix(tile_points(cp, n, 1), p))
    box = box_intersection(c5, 2, 2)
    ok = set(pub.TILE_T2_5_2_BOX_POINTS) <= set(box.points)
    checks.append(Check("tile_p5_n2_j2_box_points", ok, f"nontrivial={list(box.nontrivial)}"))

    # Exp_1 and the h tables for p = 5
    exp1 = tuple(c5.exp(1, s) for s in range(4))
    checks.append(Check("exp1_p5", exp1 == pub.EXP1_P5, str(exp1)))
    tables = {
        "h1_p5_a0": (h_matrix(c5, 0, 1), pub.H1_P5_A0),
        "h1_p5_a3": (h_matrix(c5, 3, 1), pub.H1_P5_A3),
        "h2_p5_a0_s3": (h_matrix(c5, 0, 2, s=3), pub.H2_P5_A0_S3),
        "h2_p5_a0_s2": (h_matrix(c5, 0, 2, s=2), pub.H2_P5_A0_S2),
    }
    for name, (got, want) in tables.items():
        write_csv(out / f"{name}.csv", ["row", *range(len(got[0]))], [[i, *r] for i, r in enumerate(got)])
        write_pgm(out / f"{name}.pgm", scale_residues(got, 5))
        checks.append(Check(name, _grid(got) == want))

    # A tables, s0, zero sets
    a0, a3 = tuple(a_table(c5, 0)), tuple(a_table(c5, 3))
    write_csv(out / "a1_p5.csv", ["s", "A_0", "A_3"], zip(range(4), a0, a3))
    checks.append(Check("a1_p5_a0", a0 == pub.A1_P5_A0, str(a0)))
    checks.append(Check("a1_p5_a3", a3 == pub.A1_P5_A3, str(a3)))
    s0 = extract_s0(c5, 0, 2).s0
    checks.append(Check("s0_p5_a0_j2", s0 == pub.S0_P5_A0_J2, str(s0)))
    z1 = tuple((s, r.digits) for s, r in z_intersection(c5, 0, 3, 1))
    z2 = z_intersection(c5, 0, 3, 2)
    checks.append(Check("z1_p5_0_3", z1 == pub.Z1_P5_0_3, str(z1)))
    checks.append(Check("z2_p5_0_3_empty", not z2, str(z2)))

    # theta tables
    primes = primes_in_range(17, 401, n=4)
    th2 = theta_statistics(4, 2, primes, cache_dir=cache_dir)
    th3 = theta_statistics(4, 3, primes, cache_dir=cache_dir)
    write_csv(out / "theta_n4_j2.csv", th2.header(), th2.to_rows())
    write_csv(out / "theta_n4_j3.csv", th3.header(), th3.to_rows())
    bad = {p: row for p, row in th2.rows.items() if pub.THETA_N4_J2.get(p) != row}
    checks.append(
        Check("theta_n4_j2", not bad and set(th2.rows) == set(pub.THETA_N4_J2), f"mismatches={bad}")
    )
    nonzero = {p: s for p, s in th3.sums().items() if s}
    checks.append(Check("theta_n4_j3_sums_zero", not nonzero and len(th3.rows) == 16, f"nonzero={nonzero}"))

    # bounding line
    bl = pub.BOUNDING_LINE_P17
    line = BoundingLine(bl["m"], bl["q"], bl["j"], bl["p"])
    chk = check_bounding_line(c17, bl["j"], bl["x"], line, bl["a1_range"])
    pts = component_points(c17, bl["j"], bl["x"], bl["a1_range"])
    write_csv(out / "component_p17_x9_j3.csv", ["a", "f", "side"], [(a1, a2, line.side(a1, a2)) for a1, a2 in pts])
    checks.append(
        Check(
            "bounding_line_p17_x9_j3",
            chk.valid,
            f"above={chk.above} on={chk.on} below={chk.below} violations={chk.violations}",
        )
    )

    # p = 97
    c97 = ctx(97, g=pub.P97["g"])
    a = pub.P97["a"]
    zr = zipper_solve(c97, pub.P97["n"], shifts=[a], max_level=pub.P97["n"] - 1)
    write_json(out / "zipper_p97_n4_a12.json", zr.to_json_obj())
    lvl1 = sorted(z.s for z in zr.survivors(a, 1))
    want = sorted(c97.log1(t) for t in pub.P97_LEVEL1_T)
    checks.append(
        Check(
            "p97_level1_solutions",
            lvl1 == want,
            f"s={lvl1} Exp_1(s)={[c97.exp1(s) for s in lvl1]} expected s={want}",
        )
    )
    partners = sorted((s + a) % 96 for s in lvl1)
    checks.append(Check("p97_level1_partner_exponents", partners == want, f"s+a={partners}"))
    gaps = {zr.discrepancies[a][s] for s in lvl1}
    checks.append(
        Check("p97_level2_gap", gaps == {(2, pub.P97_LEVEL2_GAP)} and not zr.survivors(a, 2), f"gaps={gaps}")
    )
    profs = h_profiles(c97, a)
    for prof in profs:
        stem = f"H{prof.i}_{prof.variant}_p97_a12"
        write_csv(out / f"{stem}.csv", ["t", "value"], sorted(prof.values.items()))
        write_csv(out / f"D_{stem}.csv", ["t", "value"], sorted(prof.derivative.items()))
        write_csv(out / f"hist_D_{stem}.csv", ["value", "count"], semilinearity_report(prof).histogram)
    lvl1_zeros = sorted(profs[0].zeros() & profs[1].zeros())
    checks.append(
        Check("p97_profile_level1_zeros", lvl1_zeros == sorted(pub.P97_LEVEL1_T), f"t={lvl1_zeros}")
    )
    cz = common_zeros(profs)
    checks.append(Check("p97_profiles_no_common_zero", not cz, f"common={sorted(cz)}"))
    write_pgm(out / "h2_p97_a12_s_log11.pgm", scale_residues(h_matrix(c97, a, 2, s=c97.log1(11)), 97))

    write_csv(out / "manifest.csv", ["check", "status", "detail"], [(c.name, c.status, c.detail) for c in checks])
    return out, checks
