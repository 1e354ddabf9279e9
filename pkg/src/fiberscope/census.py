"""Finite-field census of a cover and the permutation combinatorics
behind it.

Over F_q the fiber of a cover at an unramified t̄ is étale, and its factor
degrees are the cycle type of the Frobenius at t̄ inside the monodromy
group G ≤ S_d.  cycle_census tabulates those cycle types over all of
F_q; chebotarev_compare checks the table against the class proportions
of a candidate G; double_cosets realizes the dictionary between
⟨σ⟩-orbits and fiber factors; transposition_transitivity_check decides
transitivity (hence fullness) for groups generated by transpositions.

Permutations are one-line tuples: sigma[i] is the image of i+1, with
points labelled 1..d.  Composition is right-to-left, (a·b)(x) = a(b(x)).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .covers import CoverSpec, check_good_reduction
from .errors import PreconditionError
from .fields import make_field
from .fqfactor import factor
from .poly import Poly

GROUP_SIZE_CAP = 100_000


# -- permutations as one-line tuples ----------------------------------------

def identity_perm(d: int) -> tuple:
    return tuple(range(1, d + 1))


def perm_mul(a: tuple, b: tuple) -> tuple:
    """(a·b)(x) = a(b(x))."""
    return tuple(a[b[i] - 1] for i in range(len(a)))


def perm_inverse(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, img in enumerate(a):
        out[img - 1] = i + 1
    return tuple(out)


def perm_from_cycles(cycles, d: int) -> tuple:
    """Build a permutation from disjoint cycles given as integer lists."""
    images = list(range(1, d + 1))
    seen = set()
    for cycle in cycles:
        for x in cycle:
            if not 1 <= x <= d:
                raise PreconditionError(f"point {x} outside 1..{d}")
            if x in seen:
                raise PreconditionError(f"point {x} repeated in cycles")
            seen.add(x)
        for i, x in enumerate(cycle):
            images[x - 1] = cycle[(i + 1) % len(cycle)]
    return tuple(images)


def parse_cycle_notation(text: str, d: int) -> tuple:
    """Parse "(1 2 3)(4 5)" (commas also allowed) into a permutation."""
    text = text.strip()
    if text in ("", "()", "id", "e"):
        return identity_perm(d)
    if text.count("(") != text.count(")") or not text.startswith("("):
        raise PreconditionError(f"malformed cycle notation: {text!r}")
    cycles = []
    for chunk in text.replace(")(", ")|(").split("|"):
        chunk = chunk.strip()
        if not (chunk.startswith("(") and chunk.endswith(")")):
            raise PreconditionError(f"malformed cycle notation: {text!r}")
        body = chunk[1:-1].replace(",", " ").split()
        if body:
            cycles.append([int(x) for x in body])
    return perm_from_cycles(cycles, d)


class CycleType:
    """Partition of d: the multiset of cycle lengths, sorted descending."""

    def __init__(self, parts):
        self.parts = tuple(sorted(parts, reverse=True))
        assert all(p >= 1 for p in self.parts)

    @classmethod
    def of(cls, sigma: tuple) -> "CycleType":
        d = len(sigma)
        seen = [False] * d
        parts = []
        for start in range(d):
            if seen[start]:
                continue
            length = 0
            x = start
            while not seen[x]:
                seen[x] = True
                x = sigma[x] - 1
                length += 1
            parts.append(length)
        return cls(parts)

    @property
    def degree(self) -> int:
        return sum(self.parts)

    def key(self):
        return self.parts

    def __eq__(self, other):
        return isinstance(other, CycleType) and self.parts == other.parts

    def __lt__(self, other):
        return self.parts < other.parts

    def __hash__(self):
        return hash(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __repr__(self):
        return f"CycleType{self.parts}"


class PermutationGroup:
    """Group generated by permutations of {1..d}; elements enumerated by
    closure (desk scale, hard cap)."""

    def __init__(self, degree: int, generators):
        self.degree = degree
        self.generators = [tuple(g) for g in generators]
        for g in self.generators:
            if sorted(g) != list(range(1, degree + 1)):
                raise PreconditionError(f"not a permutation of 1..{degree}: {g}")
        self.elements = self._closure()

    def _closure(self):
        ident = identity_perm(self.degree)
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = perm_mul(g, x)
                    if y not in seen:
                        if len(seen) >= GROUP_SIZE_CAP:
                            raise PreconditionError(
                                f"group closure exceeds {GROUP_SIZE_CAP}"
                            )
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, sigma) -> bool:
        return tuple(sigma) in set(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def is_transitive(self) -> bool:
        reached = {1}
        frontier = [1]
        while frontier:
            x = frontier.pop()
            for g in self.generators:
                y = g[x - 1]
                if y not in reached:
                    reached.add(y)
                    frontier.append(y)
        return len(reached) == self.degree

    def class_proportions(self) -> dict:
        """CycleType → fraction of group elements with that type."""
        counts = {}
        for g in self.elements:
            ct = CycleType.of(g)
            counts[ct] = counts.get(ct, 0) + 1
        return {ct: Fraction(n, self.order) for ct, n in counts.items()}

    def __repr__(self):
        return f"PermutationGroup(degree={self.degree}, order={self.order})"


class CensusReport:
    """Cycle-type counts of fibers over the affine chart of P¹(F_q)."""

    def __init__(self, q, counts, branch_count, out_of_chart=0):
        self.q = q
        self.counts = counts
        self.branch_count = branch_count
        self.out_of_chart = out_of_chart
        self.total = sum(counts.values())
        assert self.total + branch_count + out_of_chart == q

    def frequencies(self) -> dict:
        return {ct: Fraction(n, self.total) for ct, n in self.counts.items()}

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "counts": {
                "+".join(str(p) for p in ct.parts): n
                for ct, n in sorted(self.counts.items(),
                                    key=lambda kv: kv[0].parts)
            },
            "total": self.total,
            "branch_count": self.branch_count,
            "out_of_chart": self.out_of_chart,
        }

    def __repr__(self):
        return (f"CensusReport(q={self.q}, counts={self.counts}, "
                f"branch={self.branch_count})")


def cycle_census(cover: CoverSpec, p: int, f_deg: int = 1,
                 override_reduction: bool = False) -> CensusReport:
    """Factor the fiber at every t̄ ∈ F_q off the branch locus and record
    the multiset of factor degrees (the Frobenius cycle type)."""
    if not override_reduction:
        report = check_good_reduction(cover, p)
        if not report.good:
            raise PreconditionError(
                f"cover has bad reduction at p = {p}: "
                + "; ".join(report.failure_reasons)
            )
    field = make_field(p, f_deg)
    rad = cover.radical()
    rbar = Poly(field, [field.from_int(c % p) for c in rad.coeffs])

    counts = {}
    branch = 0
    for tbar in field:
        if field.is_zero(rbar(tbar)):
            branch += 1
            continue
        fiber = cover.fq_fiber_poly(field, tbar)
        parts = []
        for piece, mult in factor(fiber):
            assert mult == 1, "repeated factor off the branch locus"
            parts.append(piece.degree)
        ct = CycleType(parts)
        counts[ct] = counts.get(ct, 0) + 1
    return CensusReport(field.order, counts, branch)


def default_tolerance_constant(group: PermutationGroup,
                               genus_hat: int = 0) -> int:
    """C = 4(ĝ + |G|) + |G|(ĝ − 1 + |G|), the effective Chebotarev
    constant with the Galois closure's genus ĝ supplied by the caller."""
    n = group.order
    return 4 * (genus_hat + n) + n * (genus_hat - 1 + n)


def chebotarev_compare(report: CensusReport, group: PermutationGroup,
                       tolerance_constant=None, genus_hat: int = 0):
    """Compare census frequencies with the class proportions of G; pass
    iff every deviation is within C·q^{−1/2}.  Returns (table, passed)
    where table maps CycleType → (frequency, proportion, deviation)."""
    degrees = {ct.degree for ct in report.counts}
    if degrees and degrees != {group.degree}:
        raise PreconditionError(
            f"degree mismatch: census over S_{degrees}, group degree "
            f"{group.degree}"
        )
    if tolerance_constant is None:
        tolerance_constant = default_tolerance_constant(group, genus_hat)
    freqs = report.frequencies()
    props = group.class_proportions()
    table = {}
    for ct in sorted(set(freqs) | set(props), key=CycleType.key):
        fr = freqs.get(ct, Fraction(0))
        pr = props.get(ct, Fraction(0))
        table[ct] = (fr, pr, abs(fr - pr))
    bound = tolerance_constant / math.sqrt(report.q)
    max_dev = max((float(dev) for _, _, dev in table.values()), default=0.0)
    return table, max_dev <= bound


def double_cosets(group: PermutationGroup, sigma) -> list:
    """The double cosets G₀\\G/⟨σ⟩ for G₀ = Stab_G(d), as
    (representative, block size) pairs; block sizes are verified against
    ct(σ) through the orbit of d under each conjugate g·σ·g^{−1}."""
    sigma = tuple(sigma)
    if sigma not in group:
        raise PreconditionError("sigma is not an element of the group")
    if not group.is_transitive():
        raise PreconditionError("group must be transitive")
    d = group.degree

    # cosets G₀h correspond to points h^{-1}(d); σ acts by x ↦ σ^{-1}(x)
    sigma_inv = perm_inverse(sigma)
    seen = set()
    blocks = []
    for start in range(1, d + 1):
        if start in seen:
            continue
        orbit = []
        x = start
        while x not in seen:
            seen.add(x)
            orbit.append(x)
            x = sigma_inv[x - 1]
        rep = next(g for g in group.elements if perm_inverse(g)[d - 1] == start)
        blocks.append((rep, len(orbit)))

    # the block size must be the orbit of d under the conjugate of σ
    for rep, size in blocks:
        conj = perm_mul(perm_mul(rep, sigma), perm_inverse(rep))
        x = d
        orbit_len = 0
        while True:
            x = conj[x - 1]
            orbit_len += 1
            if x == d:
                break
        assert orbit_len == size, "double-coset size disagrees with orbit"
    sizes = sorted(s for _, s in blocks)
    assert sizes == sorted(CycleType.of(sigma).parts), (
        "double-coset sizes do not match the cycle type"
    )
    return blocks


def etale_from_frobenius(sigma, group: PermutationGroup) -> list:
    """Inertia degrees of the fiber algebra attached to a Frobenius σ:
    the double-coset block sizes, which equal ct(σ)."""
    blocks = double_cosets(group, sigma)
    return sorted((size for _, size in blocks), reverse=True)


def transposition_transitivity_check(generators, d: int) -> bool:
    """True iff the transposition graph on {1..d} is connected — in which
    case the generated group is all of S_d (verified by closure for
    d ≤ 7)."""
    edges = []
    for g in generators:
        g = tuple(g)
        moved = [i + 1 for i in range(len(g)) if g[i] != i + 1]
        if len(moved) != 2 or len(g) > d:
            raise PreconditionError(f"not a transposition of 1..{d}: {g}")
        edges.append(moved)

    parent = list(range(d + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    connected = len({find(x) for x in range(1, d + 1)}) == 1
    if connected and d <= 7:
        padded = [
            tuple(g) + tuple(range(len(g) + 1, d + 1)) for g in generators
        ]
        closure = PermutationGroup(d, padded)
        assert closure.order == math.factorial(d), (
            "connected transpositions must generate the full symmetric group"
        )
    return connected
