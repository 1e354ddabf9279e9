"""Regenerate corpus/: cover files plus a manifest whose expected fiber
descriptors are frozen from the factorization oracle.

Each manifest row is a (cover, p, t) triple with t chosen so that the
branch distances v = inf, 1, 2, 3 all occur for every cover, including
rows with gcd(v, e) > 1 where the closed-form prediction is only an
indeterminate block.  Run from the repository root:

    python3 scripts/gen_corpus.py
"""

import json
import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from fiberscope.covers import CoverSpec, check_good_reduction
from fiberscope.fibers import (
    INFINITE_DISTANCE,
    agreement_check,
    branch_distance,
)
from fiberscope.fields import make_field
from fiberscope.hensel import lift_root
from fiberscope.ntheory import primes_upto
from fiberscope.padic import PadicRing
from fiberscope.poly import QQ

ROOT = os.path.join(os.path.dirname(__file__), "..", "corpus")

# rows indexed by z-degree, columns by t-degree
COVERS = {
    "z2-t": [[0, -1], [0], [1]],
    "z3-t": [[0, -1], [0], [0], [1]],
    "quartic": [[4, -1], [0], [-4], [0], [1]],
    "sextic": [[-8, -1], [0], [12], [0], [-6], [0], [1]],
    "trinomial": [[0, 1], [1], [0], [1]],
    "genus1": [[0, 6, -11, 6, -1], [0], [1]],
}

# rational branch points used as centers for the v >= 1 rows
CENTERS = {
    "z2-t": [0],
    "z3-t": [0],
    "quartic": [0, 4],
    "sextic": [0, -8],
    "trinomial": [],          # branch locus 27t^2 + 4 = 0 is irrational
    "genus1": [0, 1, 2, 3],
}


def branch_residues(cover, p):
    """Residues of the affine branch locus mod p."""
    field = make_field(p, 1)
    r = cover.radical()
    out = set()
    for tbar in range(p):
        if r.map_coeffs(lambda c: field.from_int(c % p), field)(
                field.from_int(tbar)).is_zero():
            out.add(tbar)
    return out


def irrational_center(cover, p, prec):
    """A p-adic branch point of the trinomial cover: a root of the
    radical 27t^2 + 4 over Z_p, when one exists mod p."""
    ring = PadicRing(p, prec)
    rq = cover.radical()
    field = ring.residue_field
    img = rq.map_coeffs(lambda c: field.from_int(int(c) % p), field)
    for tbar in range(p):
        a = field.from_int(tbar)
        if img(a).is_zero() and not img.derivative()(a).is_zero():
            rp = rq.map_coeffs(lambda c: ring.exact(int(c)), ring)
            return lift_root(rp, a)
    return None


def t_values(name, cover, p):
    """Choose t values at p spanning v = inf, 1, 2, 3."""
    branch = branch_residues(cover, p)
    ts = []
    # v = inf: the two smallest non-branch residues
    plain = [t for t in range(p) if t not in branch]
    ts.extend(Fraction(t) for t in plain[:2])
    centers = CENTERS[name]
    if centers:
        t0 = centers[0]
        ts.extend(Fraction(t0 + u * p**v)
                  for v, units in ((1, (1, 2)), (2, (1,)), (3, (1,)))
                  for u in units if u % p != 0)
        for extra in centers[1:]:
            ts.append(Fraction(extra + p))
    else:
        tau = irrational_center(cover, p, 8)
        if tau is not None:
            digits = tau.lift()           # integer representative mod p^8
            for v in (1, 2, 3):
                t = digits % p**v
                if branch_distance(cover, p, Fraction(t)) != v:
                    t += p**v             # bump the next digit off zero
                ts.append(Fraction(t))
    # drop exact branch points and duplicates
    rq = cover.radical().map_coeffs(Fraction, QQ)
    seen = []
    for t in ts:
        if t not in seen and rq(t) != 0:
            seen.append(t)
    return seen


def main():
    os.makedirs(os.path.join(ROOT, "covers"), exist_ok=True)
    rows = []
    for name, matrix in COVERS.items():
        path = os.path.join("covers", f"{name}.json")
        with open(os.path.join(ROOT, path), "w") as fh:
            json.dump({"f": matrix, "var_order": "t,z"}, fh, indent=2,
                      sort_keys=True)
            fh.write("\n")
        cover = CoverSpec(matrix)
        good = [p for p in primes_upto(13)
                if check_good_reduction(cover, p).good]
        print(f"{name}: good primes {good}")
        count = 0
        v_seen = set()
        for p in good:
            for t in t_values(name, cover, p):
                ok, report = agreement_check(cover, p, t)
                assert ok, (name, p, t, report.get("mismatch"))
                v = branch_distance(cover, p, t)
                v_seen.add("inf" if v == INFINITE_DISTANCE else v)
                rows.append({
                    "cover": path.replace(os.sep, "/"),
                    "p": p,
                    "t": str(t),
                    "v": "inf" if v == INFINITE_DISTANCE else v,
                    "expected": report["oracle"],
                })
                count += 1
        assert count >= 12, (name, count)
        assert {"inf", 1, 2, 3} <= v_seen, (name, v_seen)
        print(f"  {count} rows, v classes {sorted(map(str, v_seen))}")
    manifest = {"schema": 1, "rows": rows}
    with open(os.path.join(ROOT, "manifest.json"), "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"manifest: {len(rows)} rows")


if __name__ == "__main__":
    main()
