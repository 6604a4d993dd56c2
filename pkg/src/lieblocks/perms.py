"""Permutation-group machinery for small finite groups.

Groups are materialized as full element lists (orders up to ORDER_CAP), which
keeps every computation exact and deterministic.  There is no stabilizer-chain
machinery: at this scale brute force is simpler and auditable.

All objects are immutable and all functions are pure, so concurrent reads are
safe.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import gcd, lcm
from typing import Callable, Hashable, Iterable, Sequence

from .errors import CapacityError

ORDER_CAP = 240


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection on {0..n-1}, stored as the tuple of images."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        seen = [False] * n
        for x in self.images:
            if not 0 <= x < n or seen[x]:
                raise ValueError(f"not a permutation: {self.images}")
            seen[x] = True

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(tuple(range(degree)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (p * q)(x) = p(q(x))."""
        return Permutation(tuple(self.images[x] for x in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(tuple(inv))

    def order(self) -> int:
        cycles = self.cycles()
        return lcm(*(len(c) for c in cycles)) if cycles else 1

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.images[x]
            out.append(tuple(cyc))
        return tuple(out)

    def conjugate_by(self, g: "Permutation") -> "Permutation":
        """g * self * g^-1."""
        return g * self * g.inverse()

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))


def mulclose(generators: Iterable[Permutation], cap: int = ORDER_CAP) -> frozenset[Permutation]:
    """Close a generating set under products; error out past the order cap."""
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator")
    els: set[Permutation] = {Permutation.identity(gens[0].degree)}
    els.update(gens)
    frontier = list(els)
    while frontier:
        new = []
        for g in gens:
            for x in frontier:
                y = g * x
                if y not in els:
                    els.add(y)
                    new.append(y)
                    if len(els) > cap:
                        raise CapacityError(f"group order exceeds cap {cap}")
        frontier = new
    return frozenset(els)


@dataclass(frozen=True)
class PermGroup:
    """A finite permutation group with its full element list materialized."""

    degree: int
    generators: tuple[Permutation, ...]
    elements: tuple[Permutation, ...]
    name_hint: str | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def __contains__(self, p: Permutation) -> bool:
        return p in set(self.elements)

    def subgroup(self, elements: Iterable[Permutation], name_hint: str | None = None) -> "PermGroup":
        """View a subset (assumed closed) as a group of the same degree."""
        els = tuple(sorted(set(elements)))
        gens = els if len(els) <= 2 else tuple(e for e in els if not e.is_identity())
        return PermGroup(self.degree, gens, els, name_hint)


def group_from_generators(
    degree: int,
    generators: Sequence[Permutation],
    name_hint: str | None = None,
    cap: int = ORDER_CAP,
) -> PermGroup:
    for g in generators:
        if g.degree != degree:
            raise ValueError("generator degree mismatch")
    els = tuple(sorted(mulclose(generators, cap)))
    return PermGroup(degree, tuple(generators), els, name_hint)


def closure(elements: Iterable[Permutation], cap: int = ORDER_CAP) -> frozenset[Permutation]:
    return mulclose(elements, cap)


def conjugate_set(subset: frozenset[Permutation], g: Permutation) -> frozenset[Permutation]:
    gi = g.inverse()
    return frozenset(g * h * gi for h in subset)


def normalizer_elements(G: PermGroup, subgroup: Iterable[Permutation]) -> tuple[Permutation, ...]:
    """All g in G with g H g^-1 = H."""
    H = frozenset(subgroup)
    return tuple(g for g in G.elements if conjugate_set(H, g) == H)


def normalizer(G: PermGroup, subgroup: Iterable[Permutation]) -> PermGroup:
    return G.subgroup(normalizer_elements(G, subgroup))


# ---------------------------------------------------------------------------
# Regular models and quotients
# ---------------------------------------------------------------------------


def regular_perm_group(
    elements: Sequence[Hashable],
    mul: Callable,
    name_hint: str | None = None,
) -> tuple[PermGroup, dict]:
    """Left-regular permutation model of an abstract finite group.

    `elements` must be closed under `mul`; its order fixes point labels.
    Returns the group together with the element -> point index map.
    """
    idx = {e: i for i, e in enumerate(elements)}
    perms = []
    for g in elements:
        perms.append(Permutation(tuple(idx[mul(g, x)] for x in elements)))
    group = PermGroup(len(elements), tuple(perms), tuple(sorted(perms)), name_hint)
    return group, idx


def coset_partition(
    ambient: Sequence[Permutation], subgroup: Iterable[Permutation]
) -> tuple[frozenset[Permutation], ...]:
    """Left cosets of a subgroup inside a closed element list, identity coset first."""
    H = frozenset(subgroup)
    cosets: list[frozenset[Permutation]] = []
    seen: set[Permutation] = set()
    for g in sorted(ambient):
        if g in seen:
            continue
        coset = frozenset(g * h for h in H)
        seen.update(coset)
        cosets.append(coset)
    key = lambda c: min(c)
    cosets.sort(key=key)
    identity = next(c for c in cosets if any(p.is_identity() for p in c))
    cosets.remove(identity)
    return (identity, *cosets)


@dataclass(frozen=True)
class QuotientGroup:
    """N/H realized as the regular permutation action on the cosets of H."""

    group: PermGroup
    cosets: tuple[frozenset[Permutation], ...]

    def coset_of(self, p: Permutation) -> frozenset[Permutation]:
        """The coset a quotient element (regular permutation) multiplies by."""
        return self.cosets[p.images[0]]


def quotient_group(normalizing: Sequence[Permutation], subgroup: Iterable[Permutation]) -> QuotientGroup:
    """Form N/H for H normal in the span of `normalizing`."""
    cosets = coset_partition(normalizing, subgroup)
    index = {c: i for i, c in enumerate(cosets)}

    def mul(a: frozenset[Permutation], b: frozenset[Permutation]) -> frozenset[Permutation]:
        prod = min(a) * min(b)
        for c in cosets:
            if prod in c:
                return c
        raise ValueError("coset product escaped the coset list; subgroup not normal?")

    group, _ = regular_perm_group(cosets, mul)
    ordered = tuple(cosets[i] for i in range(len(cosets)))
    return QuotientGroup(group, ordered)


# ---------------------------------------------------------------------------
# Subgroup enumeration by cyclic extension
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubgroupClass:
    """One conjugacy class of subgroups."""

    representative: tuple[Permutation, ...]
    class_size: int
    normalizer: PermGroup
    label: str

    @property
    def order(self) -> int:
        return len(self.representative)


def _canonical_key(subgroup: frozenset[Permutation]) -> tuple:
    return tuple(sorted(p.images for p in subgroup))


def _class_orbit(G: PermGroup, subgroup: frozenset[Permutation]) -> set[frozenset[Permutation]]:
    return {conjugate_set(subgroup, g) for g in G.elements}


def subgroup_classes(G: PermGroup) -> tuple[SubgroupClass, ...]:
    """All conjugacy classes of subgroups, via cyclic extension.

    Layer k+1 subgroups are generated by a layer-k representative plus one
    cyclic subgroup; deduplication is up to conjugacy, which still reaches
    every class since conjugating the pieces conjugates the join.
    """
    if G.order > ORDER_CAP:
        raise CapacityError(f"subgroup enumeration capped at order {ORDER_CAP}")
    cyclics = sorted(
        {frozenset(mulclose([g], G.order)) for g in G.elements}, key=_canonical_key
    )
    trivial = frozenset([G.identity])
    orbits: dict[tuple, set[frozenset[Permutation]]] = {}
    member_key: dict[tuple, tuple] = {}

    def register(sub: frozenset[Permutation]) -> bool:
        if _canonical_key(sub) in member_key:
            return False
        orbit = _class_orbit(G, sub)
        rep_key = min(_canonical_key(s) for s in orbit)
        orbits[rep_key] = orbit
        for s in orbit:
            member_key[_canonical_key(s)] = rep_key
        return True

    register(trivial)
    frontier = [trivial]
    while frontier:
        new = []
        for H in frontier:
            for C in cyclics:
                if C <= H:
                    continue
                K = frozenset(mulclose(list(H | C), G.order))
                if register(K):
                    new.append(K)
        frontier = new

    out = []
    for rep_key in sorted(orbits, key=lambda k: (len(orbits[k]) and len(next(iter(orbits[k]))), k)):
        orbit = orbits[rep_key]
        rep = min(orbit, key=_canonical_key)
        norm = normalizer(G, rep)
        size = G.order // norm.order
        if size != len(orbit):
            raise AssertionError("orbit size disagrees with normalizer index")
        out.append(
            SubgroupClass(
                representative=tuple(sorted(rep)),
                class_size=size,
                normalizer=norm,
                label=recognize(rep),
            )
        )
    out.sort(key=lambda c: (c.order, _canonical_key(frozenset(c.representative))))
    return tuple(out)


def total_subgroup_count(classes: Iterable[SubgroupClass]) -> int:
    return sum(c.class_size for c in classes)


# ---------------------------------------------------------------------------
# Index-2 kernels
# ---------------------------------------------------------------------------


def derived_subgroup(G: PermGroup) -> frozenset[Permutation]:
    comms = {a * b * a.inverse() * b.inverse() for a in G.elements for b in G.elements}
    return mulclose(list(comms), G.order)


def index2_kernels(G: PermGroup) -> tuple[tuple[Permutation, ...], ...]:
    """All index-2 subgroups, i.e. kernels of surjections onto C_2.

    They all contain the subgroup generated by squares and commutators, so we
    enumerate nonzero functionals on the elementary abelian quotient.
    """
    gens = {g * g for g in G.elements}
    gens |= {a * b * a.inverse() * b.inverse() for a in G.elements for b in G.elements}
    K0 = mulclose(list(gens), G.order)
    if len(K0) == G.order:
        return ()
    quot = quotient_group(G.elements, K0)
    # The quotient is elementary abelian of exponent 2; pick an F_2 basis.
    basis: list[Permutation] = []
    spanned = {quot.group.identity}
    for q in quot.group.elements:
        if q not in spanned:
            basis.append(q)
            spanned = set(mulclose(basis, quot.group.order))
    kernels = []
    for mask in range(1, 1 << len(basis)):
        # functional sending basis[i] to (-1)^bit(i); kernel pulled back to G
        coords: dict[Permutation, int] = {quot.group.identity: 0}
        frontier = [quot.group.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for i, b in enumerate(basis):
                    y = b * x
                    if y not in coords:
                        coords[y] = coords[x] ^ ((mask >> i) & 1)
                        nxt.append(y)
            frontier = nxt
        kernel: set[Permutation] = set()
        for q, c in coords.items():
            if c == 0:
                kernel.update(quot.coset_of(q))
        kernels.append(tuple(sorted(kernel)))
    kernels.sort(key=lambda k: tuple(p.images for p in k))
    return tuple(kernels)


# ---------------------------------------------------------------------------
# Fingerprint-based recognition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupFingerprint:
    order: int
    abelian: bool
    exponent: int
    order_histogram: tuple[tuple[int, int], ...]
    derived_order: int


def fingerprint(elements: Iterable[Permutation]) -> GroupFingerprint:
    els = tuple(sorted(set(elements)))
    orders = [p.order() for p in els]
    hist = tuple(sorted(Counter(orders).items()))
    abelian = all(a * b == b * a for a in els for b in els)
    comms = {a * b * a.inverse() * b.inverse() for a in els for b in els}
    derived = mulclose(list(comms), len(els))
    return GroupFingerprint(
        order=len(els),
        abelian=abelian,
        exponent=lcm(*orders),
        order_histogram=hist,
        derived_order=len(derived),
    )


def _dihedral_histogram(order: int) -> tuple[tuple[int, int], ...]:
    # Dihedral of order 2m: rotation of index k has order m/gcd(k, m), plus m reflections.
    m = order // 2
    hist: Counter[int] = Counter()
    for k in range(m):
        hist[m // gcd(k, m)] += 1
    hist[2] += m
    return tuple(sorted(hist.items()))


_SPECIAL_HISTOGRAMS = {
    # (order, histogram) -> name; only names that cannot collide inside the
    # family of quotients this artifact produces.
    (8, ((1, 1), (2, 1), (4, 6))): "Q_8",
    (16, ((1, 1), (2, 1), (4, 10), (8, 4))): "Q_16",
    (12, ((1, 1), (2, 3), (3, 8))): "A_4",
    (24, ((1, 1), (2, 9), (3, 8), (4, 6))): "Sigma_4",
    (24, ((1, 1), (2, 1), (3, 8), (4, 6), (6, 8))): "2A_4",
    (60, ((1, 1), (2, 15), (3, 20), (5, 24))): "A_5",
    (48, ((1, 1), (2, 13), (3, 8), (4, 6), (6, 8), (8, 12))): "2Sigma_4",
    (120, ((1, 1), (2, 1), (3, 20), (4, 30), (5, 24), (6, 20), (10, 24))): "2A_5",
}


def recognize(elements: Iterable[Permutation]) -> str:
    """Canonical name for a small group, or an explicit "unknown" label.

    Dihedral names follow the order convention (D_4 is the Klein four-group);
    the order-12 dihedral fingerprint is reported as D_6 x C_2, the form in
    which that isomorphism class occurs here.
    """
    fp = fingerprint(elements)
    n = fp.order
    if n == 1:
        return "1"
    if fp.abelian:
        if fp.exponent == n:
            return f"C_{n}"
        if n == 4:
            return "D_4"
        if n == 8 and fp.exponent == 2:
            return "C_2^3"
        if n == 8 and fp.exponent == 4:
            return "C_4 x C_2"
        return _unknown(fp)
    name = _SPECIAL_HISTOGRAMS.get((n, fp.order_histogram))
    if name:
        return name
    if n % 2 == 0 and fp.order_histogram == _dihedral_histogram(n):
        expected_derived = n // 2 if (n // 2) % 2 == 1 else n // 4
        if fp.derived_order == expected_derived:
            return "D_6 x C_2" if n == 12 else f"D_{n}"
    return _unknown(fp)


def _unknown(fp: GroupFingerprint) -> str:
    return f"unknown[order={fp.order},exp={fp.exponent},abelian={fp.abelian}]"


def normalizer_quotient(G: PermGroup, H) -> str:
    """Recognized name of N_G(H)/H.

    H may be a SubgroupClass or any iterable of elements forming a subgroup.
    Unrecognized quotients come back with an explicit fingerprint label,
    never a guess.
    """
    members = H.representative if isinstance(H, SubgroupClass) else tuple(H)
    norm = normalizer_elements(G, members)
    quot = quotient_group(norm, members)
    return recognize(quot.group.elements)


# ---------------------------------------------------------------------------
# Stock constructions
# ---------------------------------------------------------------------------


def cyclic_perm_group(n: int) -> PermGroup:
    if n == 1:
        e = Permutation.identity(1)
        return PermGroup(1, (e,), (e,), "C_1")
    rot = Permutation(tuple((i + 1) % n for i in range(n)))
    return group_from_generators(n, [rot], f"C_{n}")


def klein_perm_group() -> PermGroup:
    a = Permutation((1, 0, 2, 3))
    b = Permutation((0, 1, 3, 2))
    return group_from_generators(4, [a, b], "D_4")


def dihedral_perm_group(order: int) -> PermGroup:
    """Dihedral group of the given order (order convention: D_4 is Klein)."""
    if order % 2 != 0 or order < 2:
        raise ValueError("dihedral order must be an even integer >= 2")
    if order == 2:
        return cyclic_perm_group(2)
    if order == 4:
        return klein_perm_group()
    m = order // 2
    rot = Permutation(tuple((i + 1) % m for i in range(m)))
    ref = Permutation(tuple((-i) % m for i in range(m)))
    return group_from_generators(m, [rot, ref], f"D_{order}")


def direct_product_with_c2(G: PermGroup, name_hint: str | None = None) -> PermGroup:
    """G x C_2 acting on degree(G) + 2 points."""
    d = G.degree

    def embed(p: Permutation, flip: bool) -> Permutation:
        tail = (d + 1, d) if flip else (d, d + 1)
        return Permutation(p.images + tail)

    gens = [embed(g, False) for g in G.generators] + [embed(G.identity, True)]
    elements = tuple(sorted(embed(g, f) for g in G.elements for f in (False, True)))
    if len(elements) > ORDER_CAP:
        raise CapacityError(f"product order {len(elements)} exceeds cap {ORDER_CAP}")
    return PermGroup(d + 2, tuple(gens), elements, name_hint)


def embed_in_product(p: Permutation, flip: bool) -> Permutation:
    """Embed a degree-d permutation into the degree d+2 product with C_2."""
    d = p.degree
    tail = (d + 1, d) if flip else (d, d + 1)
    return Permutation(p.images + tail)
