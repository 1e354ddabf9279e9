"""Rational points of bounded height on P¹ and their reduction mod m.

The reduction map {H(x) ≤ N} → P¹(Z/m) is surjective once N reaches
max(⌊√m⌋, m/p_min) and injective while N < √(m/2); both bounds are
sharp along explicit families.  The number of points with H(x) ≤ N in a
fixed congruence class grows like 12N²/(π²m)·∏_{p|m} p/(p+1) with an
O(N log N) error.  This module enumerates, reduces, locates thresholds,
and measures the equidistribution error.

Classes of P¹(Z/m) are stored by their lexicographically smallest
representative under unit scaling; bulk operations use a dense per-modulus
label table built once by an orbit sweep.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import PreconditionError
from .ntheory import prime_divisors, smallest_prime_factor

MODULUS_CAP = 10**6
TABLE_MODULUS_CAP = 4000
EQUIDIST_MODULUS_CAP = 1000
EQUIDIST_HEIGHT_CAP = 10**5


class RationalPoint:
    """A point of P¹(Q) as a normalized coprime pair: b ≥ 1, or (1, 0)
    for the point at infinity."""

    def __init__(self, a: int, b: int):
        if a == 0 and b == 0:
            raise PreconditionError("(0, 0) is not a projective point")
        if b == 0:
            a = 1
        else:
            g = math.gcd(abs(a), abs(b))
            a, b = a // g, b // g
            if b < 0:
                a, b = -a, -b
        self.a = a
        self.b = b

    @property
    def height(self) -> int:
        return max(abs(self.a), self.b)

    def is_infinity(self) -> bool:
        return self.b == 0

    def key(self):
        return (self.a, self.b)

    def __eq__(self, other):
        return isinstance(other, RationalPoint) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.is_infinity():
            return "RationalPoint(inf)"
        return f"RationalPoint({self.a}/{self.b})"


class CongruenceClass:
    """A point of P¹(Z/m): the unit-scaling orbit of a unimodular pair,
    keyed by its lexicographically smallest member."""

    def __init__(self, m: int, u: int, v: int):
        if m < 2:
            raise PreconditionError("modulus must be at least 2")
        u %= m
        v %= m
        if math.gcd(math.gcd(u, v), m) != 1:
            raise PreconditionError(f"({u}, {v}) not unimodular mod {m}")
        self.m = m
        self.u, self.v = self._canonical(m, u, v)

    @staticmethod
    def _canonical(m, u, v):
        best = None
        for g in range(1, m):
            if math.gcd(g, m) != 1:
                continue
            cand = (g * u % m, g * v % m)
            if best is None or cand < best:
                best = cand
            if best == (0, 1) or best == (1, 0):
                break
        return best

    def key(self):
        return (self.m, self.u, self.v)

    def __eq__(self, other):
        return isinstance(other, CongruenceClass) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"CongruenceClass([{self.u}:{self.v}] mod {self.m})"


def enumerate_points(n: int):
    """All points of P¹(Q) with height ≤ n, each exactly once, in
    increasing height (ties: by denominator, then numerator)."""
    if n < 1:
        raise PreconditionError("height bound must be at least 1")
    for h in range(1, n + 1):
        # points with height exactly h
        if h == 1:
            yield RationalPoint(0, 1)
            yield RationalPoint(1, 0)
            yield RationalPoint(-1, 1)
            yield RationalPoint(1, 1)
            continue
        for b in range(1, h):
            if math.gcd(h, b) == 1:
                yield RationalPoint(-h, b)
                yield RationalPoint(h, b)
        for a in range(-h, h + 1):
            if math.gcd(abs(a), h) == 1:
                yield RationalPoint(a, h)


def reduce_mod(point: RationalPoint, m: int) -> CongruenceClass:
    """The congruence class of a point; always defined since the
    normalized pair is coprime."""
    return CongruenceClass(m, point.a % m, point.b % m)


def projective_line_size(m: int) -> int:
    """|P¹(Z/m)| = m·∏_{p|m}(1 + 1/p)."""
    size = m
    for p in prime_divisors(m):
        size = size * (p + 1) // p
    return size


def lemma_bound(m: int) -> int:
    """max(⌊√m⌋, m/p_min): the proven surjectivity threshold bound."""
    return max(math.isqrt(m), m // smallest_prime_factor(m))


# -- dense class-label tables and bulk point arrays --------------------------

@lru_cache(maxsize=4)
def _label_table(m: int):
    """(labels, reps): labels[u*m + v] = smallest index in the unit orbit
    of (u, v), or −1 off the unimodular locus; reps = sorted class seeds.
    Swept in lexicographic order so the first unlabeled index of an orbit
    is its minimum.  The unimodular mask is sieved per prime divisor
    (a pair fails only when some p | m divides both coordinates)."""
    idx = np.arange(m, dtype=np.int64)
    units = np.flatnonzero(np.gcd(idx, m) == 1)
    bad = np.zeros((m, m), dtype=bool)
    for p in prime_divisors(m):
        divisible = idx % p == 0
        bad |= np.logical_and.outer(divisible, divisible)
    labels = np.full(m * m, -1, dtype=np.int32)
    order = np.flatnonzero(~bad.ravel())
    reps = []
    pos = 0
    chunk_size = 4096
    while pos < len(order):
        chunk = order[pos:pos + chunk_size]
        pos += chunk_size
        chunk = chunk[labels[chunk] == -1]
        for i in chunk.tolist():
            if labels[i] != -1:
                continue
            u, v = divmod(i, m)
            orbit = (units * u % m) * m + units * v % m
            labels[orbit] = i
            reps.append(i)
    return labels, np.array(reps, dtype=np.int64)


_POINT_CACHE = {"n": 0, "arrays": None}


def _sorted_points(n: int):
    """(a, b, h) arrays of all normalized points with height ≤ n, sorted
    by height (then denominator, then numerator).  The cache grows
    geometrically so sweeps over slowly increasing bounds do not rebuild
    it once per call."""
    if _POINT_CACHE["n"] < n:
        top = max(n, 2 * _POINT_CACHE["n"])
        a_range = np.arange(-top, top + 1, dtype=np.int64)
        b_range = np.arange(1, top + 1, dtype=np.int64)
        coprime = np.gcd(np.abs(a_range)[:, None], b_range[None, :]) == 1
        ai, bi = np.nonzero(coprime)
        a = a_range[ai]
        b = b_range[bi]
        a = np.append(a, 1)  # the point at infinity (1, 0)
        b = np.append(b, 0)
        h = np.maximum(np.abs(a), b)
        order = np.lexsort((a, b, h))
        _POINT_CACHE["n"] = top
        _POINT_CACHE["arrays"] = (a[order], b[order], h[order])
    a, b, h = _POINT_CACHE["arrays"]
    cut = np.searchsorted(h, n, side="right")
    return a[:cut], b[:cut], h[:cut]


def class_min_heights(m: int, n: int) -> dict:
    """Minimal height hitting each class of P¹(Z/m), over H ≤ n: maps
    canonical pair (u, v) → min height; classes unseen by height n are
    absent.  Points are scattered in decreasing height so the surviving
    write at each label is the smallest."""
    if m > TABLE_MODULUS_CAP:
        raise PreconditionError(
            f"dense table limited to m <= {TABLE_MODULUS_CAP}"
        )
    table, reps = _label_table(m)
    a, b, h = _sorted_points(n)
    keys = (a % m) * m + b % m
    labels = table[keys]
    dense = np.full(m * m, -1, dtype=np.int64)
    dense[labels[::-1]] = h[::-1]
    hit = reps[dense[reps] >= 0]
    return {
        divmod(int(lab), m): int(dense[lab]) for lab in hit.tolist()
    }


def surjectivity_threshold(m: int) -> int:
    """Smallest N with {H ≤ N} → P¹(Z/m) surjective; always at most
    lemma_bound(m), and that inequality is asserted."""
    if not 2 <= m <= MODULUS_CAP:
        raise PreconditionError(f"modulus out of range: {m}")
    target = projective_line_size(m)
    bound = lemma_bound(m)
    if m <= TABLE_MODULUS_CAP:
        n = bound
        while True:
            mins = class_min_heights(m, n)
            if len(mins) == target:
                threshold = max(mins.values())
                assert threshold <= bound
                return threshold
            n *= 2  # unreachable if the threshold bound holds
    # beyond the dense-table range: stream points in height order
    seen = {}
    for point in enumerate_points(bound):
        cls = reduce_mod(point, m).key()
        if cls not in seen:
            seen[cls] = point.height
            if len(seen) == target:
                threshold = max(seen.values())
                assert threshold <= bound
                return threshold
    raise AssertionError("threshold bound violated")


def injectivity_check(m: int, n: int) -> bool:
    """True iff reduction mod m is injective on {H ≤ n}."""
    if not 2 <= m <= MODULUS_CAP:
        raise PreconditionError(f"modulus out of range: {m}")
    if m <= TABLE_MODULUS_CAP:
        table, _ = _label_table(m)
        a, b, _h = _sorted_points(n)
        keys = (a % m) * m + b % m
        labels = table[keys]
        return len(np.unique(labels)) == len(labels)
    seen = set()
    for point in enumerate_points(n):
        cls = reduce_mod(point, m).key()
        if cls in seen:
            return False
        seen.add(cls)
    return True


def equidistribution_main_term(m: int, n: int) -> float:
    """12N²/(π²m)·∏_{p|m} p/(p+1): the per-class main term."""
    value = 12 * n * n / (math.pi ** 2 * m)
    for p in prime_divisors(m):
        value *= p / (p + 1)
    return value


def _class_counts_sweep(ms, n):
    """Per-class point counts for several moduli in one pass over the
    pairs (a, b), b ≥ 1, a ≠ 0, gcd = 1, max(|a|, b) ≤ n (the
    normalization that drops 0/1 and ∞)."""
    ms = list(ms)
    tables = {m: _label_table(m)[0] for m in ms if m > 1}
    acc = {m: np.zeros(m * m if m > 1 else 1, dtype=np.int64) for m in ms}
    a_range = np.arange(-n, n + 1, dtype=np.int64)
    a_range = a_range[a_range != 0]
    block = max(1, 10**7 // (2 * n + 1))
    for b0 in range(1, n + 1, block):
        b_range = np.arange(b0, min(b0 + block, n + 1), dtype=np.int64)
        mask = np.gcd(np.abs(a_range)[:, None], b_range[None, :]) == 1
        ai, bi = np.nonzero(mask)
        a = a_range[ai]
        b = b_range[bi]
        for m in ms:
            if m == 1:
                acc[m][0] += len(a)
                continue
            keys = (a % m) * m + b % m
            labels = tables[m][keys]
            acc[m] += np.bincount(labels, minlength=m * m)
    return acc


def equidistribution_test(m: int, n: int) -> dict:
    """Count points per class (0/1 and ∞ dropped per the proof's
    normalization), compare with the main term, and report the largest
    residual scaled by N·log N.

    Returns {"classes": {(u, v): (count, main, residual)},
    "max_residual": float, "scaled_residual": float}.
    """
    if not 1 <= m <= EQUIDIST_MODULUS_CAP:
        raise PreconditionError(f"modulus out of range: {m}")
    if n > EQUIDIST_HEIGHT_CAP:
        raise PreconditionError(f"height bound out of range: {n}")
    return equidistribution_sweep([m], n)[m]


def equidistribution_sweep(ms, n) -> dict:
    """equidistribution_test for several moduli sharing one enumeration."""
    for m in ms:
        if not 1 <= m <= EQUIDIST_MODULUS_CAP:
            raise PreconditionError(f"modulus out of range: {m}")
    if n > EQUIDIST_HEIGHT_CAP:
        raise PreconditionError(f"height bound out of range: {n}")
    acc = _class_counts_sweep(ms, n)
    out = {}
    for m in ms:
        main = equidistribution_main_term(m, n)
        classes = {}
        if m == 1:
            classes[(0, 0)] = (int(acc[m][0]), main,
                               abs(int(acc[m][0]) - main))
        else:
            counts = acc[m]
            for label in np.flatnonzero(counts).tolist():
                classes[divmod(label, m)] = (
                    int(counts[label]), main, abs(int(counts[label]) - main)
                )
        max_residual = max(res for _, _, res in classes.values())
        out[m] = {
            "classes": classes,
            "max_residual": max_residual,
            "scaled_residual": max_residual / (n * math.log(n)) if n > 1
            else max_residual,
        }
    return out
