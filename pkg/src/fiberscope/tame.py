"""Classification of totally tamely ramified extensions of unramified
p-adic fields, and the metacyclic subgroup combinatorics behind it.

A degree-e totally tame extension of K' (unramified of degree f over Q_p,
residue field F_q', q' = p^f) is K'((u·p)^{1/e}) for a unit u, and its
conjugacy class over K' is determined by u modulo e-th powers of units —
concretely by dlog(ū) mod g with g = gcd(e, q' − 1), the dlog taken to the
residue field's fixed generator.  The companion group model is
G = ⟨τ, σ | τ^e, σ^m, στσ⁻¹ = τ^q⟩ with m a multiple of ord_e(q); the
subgroups H_i = ⟨τ^i σ⟩ are conjugate exactly when i ≡ j mod gcd(e, q−1),
which this module checks by honest enumeration rather than assuming.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import PreconditionError
from .fields import FqElement, make_field
from .ntheory import multiplicative_order


class TameExtensionClass:
    """Conjugacy class over K' of a totally tame degree-e extension."""

    __slots__ = ("p", "f", "e", "unit_index")

    def __init__(self, p: int, f: int, e: int, unit_index: int):
        g = math.gcd(e, p**f - 1)
        if not 0 <= unit_index < g:
            raise PreconditionError(
                f"unit_index must lie in [0, {g}) for e={e}, q'={p**f}"
            )
        self.p = p
        self.f = f
        self.e = e
        self.unit_index = unit_index

    @property
    def g(self) -> int:
        """Number of classes with these (p, f, e): gcd(e, p^f − 1)."""
        return math.gcd(self.e, self.p**self.f - 1)

    def base_coset(self) -> int:
        """The coarser class modulo units of the base Q_p: the coset of
        O_K^× · O_{K'}^{×e}, i.e. unit_index mod gcd(e, (p^f−1)/(p−1))."""
        s = (self.p**self.f - 1) // (self.p - 1)
        return self.unit_index % math.gcd(self.e, s)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "f": self.f,
            "e": self.e,
            "unit_index": self.unit_index,
            "g": self.g,
        }

    def key(self):
        return (self.p, self.f, self.e, self.unit_index)

    def __eq__(self, other):
        return isinstance(other, TameExtensionClass) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return (
            f"TameClass(p={self.p}, f={self.f}, e={self.e}, "
            f"u-index {self.unit_index} of {self.g})"
        )


def classify_binomial(p: int, f: int, e: int, u) -> TameExtensionClass:
    """Class of K'((u·p)^{1/e}) for a unit u of the residue field F_{p^f}."""
    if math.gcd(e, p) != 1:
        raise PreconditionError("wild case: p divides e")
    field = make_field(p, f)
    u = field.coerce(u)
    if u.is_zero():
        raise PreconditionError("u must be a unit")
    g = math.gcd(e, field.order - 1)
    return TameExtensionClass(p, f, e, u.dlog() % g)


def iso_test(L1: TameExtensionClass, L2: TameExtensionClass) -> bool:
    """Conjugacy over K': complete invariant is (p, f, e, unit_index)."""
    return L1.key() == L2.key()


def count_classes(p: int, f: int, e: int) -> int:
    """Number of conjugacy classes of totally tame degree-e extensions
    of the unramified degree-f extension of Q_p: gcd(e, p^f − 1)."""
    if math.gcd(e, p) != 1:
        raise PreconditionError("wild case: p divides e")
    return math.gcd(e, p**f - 1)


def all_classes(p: int, f: int, e: int) -> list[TameExtensionClass]:
    return [
        TameExtensionClass(p, f, e, i) for i in range(count_classes(p, f, e))
    ]


def realizability(e: int, f: int, q: int) -> bool:
    """Whether every tame class with invariants (e, f) over the unramified
    extension occurs among fibers: gcd(e, (q^f − 1)/(q − 1)) = 1."""
    if math.gcd(e, q) != 1:
        raise PreconditionError("wild case: residue characteristic divides e")
    if f < 1:
        raise PreconditionError("f must be >= 1")
    return math.gcd(e, (q**f - 1) // (q - 1)) == 1


def proportion_realizable(e: int, f: int, q: int) -> Fraction:
    """Fraction of the g classes that are realizable: 1/gcd(e, (q^f−1)/(q−1))."""
    if math.gcd(e, q) != 1:
        raise PreconditionError("wild case: residue characteristic divides e")
    return Fraction(1, math.gcd(e, (q**f - 1) // (q - 1)))


def max_abelian_subdegree(e: int, q: int) -> int:
    """Degree of the maximal subextension Galois over the base: gcd(e, q−1)."""
    if math.gcd(e, q) != 1:
        raise PreconditionError("wild case: residue characteristic divides e")
    return math.gcd(e, q - 1)


def faithful_sigma_order(e: int, q: int) -> int:
    """Smallest m such that ord_e(q) | m and 1 + q + … + q^{m−1} ≡ 0 mod e.

    With this m every H_i = ⟨τ^i σ⟩ has order exactly m (index e), so
    subgroup conjugacy in the finite model witnesses the profinite
    statement; with the bare multiplicative order distinct H_i can collide
    (already at e = 4, q = 5, where ⟨τσ⟩ = ⟨τ³σ⟩ = ⟨τ⟩ when m = 1).
    """
    if e == 1:
        return 1
    order = multiplicative_order(q, e)
    s = 0   # 1 + q + ... + q^{k-1} mod e
    qk = 1  # q^k mod e
    k = 0
    while True:
        s = (s + qk) % e
        qk = qk * q % e
        k += 1
        if k % order == 0 and s == 0:
            return k


class MetacyclicGroup:
    """The finite model ⟨τ, σ | τ^e, σ^m, στσ⁻¹ = τ^q⟩, elements (i, j)
    standing for τ^i σ^j with (i₁,j₁)(i₂,j₂) = (i₁ + i₂ q^{j₁}, j₁ + j₂)."""

    def __init__(self, e: int, q: int, m: int | None = None):
        if e < 1 or q < 1 or math.gcd(e, q) != 1:
            raise PreconditionError("need e, q >= 1 with gcd(e, q) = 1")
        order = multiplicative_order(q, e) if e > 1 else 1
        if m is None:
            m = faithful_sigma_order(e, q)
        if m < 1 or m % order != 0:
            raise PreconditionError(
                f"m = {m} is not a multiple of ord_e(q) = {order}"
            )
        self.e = e
        self.q = q
        self.m = m

    def product(self, x, y):
        (i1, j1), (i2, j2) = x, y
        return ((i1 + i2 * pow(self.q, j1, self.e)) % self.e, (j1 + j2) % self.m)

    def identity(self):
        return (0, 0)

    def inverse(self, x):
        i, j = x
        qinv_j = pow(pow(self.q, j, self.e), -1, self.e) if self.e > 1 else 0
        return ((-i * qinv_j) % self.e, (-j) % self.m)

    def elements(self):
        return [(i, j) for i in range(self.e) for j in range(self.m)]

    def __len__(self):
        return self.e * self.m

    def element_order(self, x):
        k = 1
        acc = x
        while acc != self.identity():
            acc = self.product(acc, x)
            k += 1
        return k

    def cyclic_subgroup(self, x) -> frozenset:
        out = [self.identity()]
        acc = x
        while acc != self.identity():
            out.append(acc)
            acc = self.product(acc, x)
        return frozenset(out)

    def conjugate_generator_index(self, g, i: int) -> int:
        """For x = (i, 1): g x g⁻¹ = (i'', 1) with
        i'' = a(1 − q) + i·q^b for g = (a, b) — σ-exponent is preserved."""
        a, b = g
        return (a * (1 - self.q) + i * pow(self.q, b, self.e)) % self.e

    def __repr__(self):
        return f"Metacyclic(e={self.e}, q={self.q}, m={self.m})"


def metacyclic_conjugate(group: MetacyclicGroup, i: int, j: int) -> bool:
    """Whether H_i = ⟨τ^i σ⟩ and H_j = ⟨τ^j σ⟩ are conjugate, by honest
    enumeration: conjugating the generator stays in σ-exponent 1, so the
    conjugates of H_i are exactly the H_{i''} over i'' in the index orbit;
    subgroup equality absorbs generator changes."""
    e = group.e
    if not (0 <= i < e and 0 <= j < e):
        raise PreconditionError("indices must lie in [0, e)")
    subgroups = {k: group.cyclic_subgroup((k, 1 % group.m)) for k in range(e)}
    target = subgroups[j]
    if subgroups[i] == target:
        return True
    for g in group.elements():
        if subgroups[group.conjugate_generator_index(g, i)] == target:
            return True
    return False


def metacyclic_classes(group: MetacyclicGroup) -> list[set]:
    """Partition of {0..e−1} into subgroup-conjugacy classes (union–find
    over the generator-conjugation orbits and subgroup equality)."""
    e = group.e
    parent = list(range(e))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    by_set = {}
    for k in range(e):
        key = group.cyclic_subgroup((k, 1 % group.m))
        if key in by_set:
            union(k, by_set[key])
        else:
            by_set[key] = k
    for g in group.elements():
        for k in range(e):
            union(k, group.conjugate_generator_index(g, k))
    classes = {}
    for k in range(e):
        classes.setdefault(find(k), set()).add(k)
    return list(classes.values())
