"""Binary polyhedral groups and the Sp(1) x C_2 counting computation.

The binary octahedral family lives inside the quaternions with coordinates in
Q(sqrt 2), represented exactly as rational pairs; the binary icosahedral group
is modeled as SL(2,5) acting on the nonzero vectors of F_5^2.  Both avoid
floating point entirely.

The counting computation enumerates, for each base F in {2A5, 2S4, 2A4, Q8},
the conjugacy classes of finite subgroups S of F x C_2 projecting onto F,
classifies them as F x 1, graph of an epimorphism F -> C_2, or F x C_2, and
attaches the Weyl group N_{N x C_2}(S)/S, where N is the normalizer of F in
the unit quaternions (curated: 2A5 is self-normalizing, the other three are
normalized by 2S4).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import CapacityError
from .perms import (
    ORDER_CAP,
    PermGroup,
    Permutation,
    embed_in_product,
    direct_product_with_c2,
    group_from_generators,
    index2_kernels,
    normalizer_elements,
    quotient_group,
    recognize,
    regular_perm_group,
)

BASES = ("2A5", "2S4", "2A4", "Q8")
BASE_LABELS = {"2A5": "2A_5", "2S4": "2Sigma_4", "2A4": "2A_4", "Q8": "Q_8"}


# ---------------------------------------------------------------------------
# Exact arithmetic in Q(sqrt 2) and the quaternions over it
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class RootTwo:
    """a + b*sqrt(2) with rational a, b."""

    a: Fraction
    b: Fraction

    def __add__(self, other: "RootTwo") -> "RootTwo":
        return RootTwo(self.a + other.a, self.b + other.b)

    def __neg__(self) -> "RootTwo":
        return RootTwo(-self.a, -self.b)

    def __mul__(self, other: "RootTwo") -> "RootTwo":
        return RootTwo(
            self.a * other.a + 2 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )


def _r2(a, b=0) -> RootTwo:
    return RootTwo(Fraction(a), Fraction(b))


Quaternion = tuple[RootTwo, RootTwo, RootTwo, RootTwo]

Q_ONE: Quaternion = (_r2(1), _r2(0), _r2(0), _r2(0))
Q_I: Quaternion = (_r2(0), _r2(1), _r2(0), _r2(0))
Q_J: Quaternion = (_r2(0), _r2(0), _r2(1), _r2(0))
Q_OMEGA: Quaternion = (_r2(Fraction(1, 2)),) * 4  # (1+i+j+k)/2, order 6
Q_S: Quaternion = (_r2(0, Fraction(1, 2)), _r2(0, Fraction(1, 2)), _r2(0), _r2(0))  # (1+i)/sqrt2


def quaternion_mul(p: Quaternion, q: Quaternion) -> Quaternion:
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (
        a1 * a2 + (-(b1 * b2)) + (-(c1 * c2)) + (-(d1 * d2)),
        a1 * b2 + b1 * a2 + c1 * d2 + (-(d1 * c2)),
        a1 * c2 + (-(b1 * d2)) + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 + (-(c1 * b2)) + d1 * a2,
    )


def _quaternion_close(gens: list[Quaternion], cap: int = ORDER_CAP) -> frozenset[Quaternion]:
    els: set[Quaternion] = {Q_ONE}
    els.update(gens)
    frontier = list(els)
    while frontier:
        new = []
        for g in gens:
            for x in frontier:
                y = quaternion_mul(g, x)
                if y not in els:
                    els.add(y)
                    new.append(y)
                    if len(els) > cap:
                        raise CapacityError("quaternion closure exceeds cap")
        frontier = new
    return frozenset(els)


def _is_rational(q: Quaternion) -> bool:
    return all(c.b == 0 for c in q)


def _is_unit_coordinate(q: Quaternion) -> bool:
    return all(c.b == 0 and c.a.denominator == 1 for c in q)


@dataclass(frozen=True)
class OctahedralModel:
    """Regular permutation model of 2Sigma_4 with its named subgroups."""

    group: PermGroup
    q8: tuple[Permutation, ...]
    tet: tuple[Permutation, ...]  # 2A_4, the Hurwitz units


@lru_cache(maxsize=1)
def binary_octahedral_model() -> OctahedralModel:
    els = sorted(_quaternion_close([Q_OMEGA, Q_S]))
    if len(els) != 48:
        raise AssertionError(f"binary octahedral closure gave {len(els)} elements")
    group, idx = regular_perm_group(els, quaternion_mul, "2Sigma_4")
    perm_of = {
        q: Permutation(tuple(idx[quaternion_mul(q, x)] for x in els)) for q in els
    }
    q8 = tuple(sorted(perm_of[q] for q in els if _is_unit_coordinate(q)))
    tet = tuple(sorted(perm_of[q] for q in els if _is_rational(q)))
    if len(q8) != 8 or len(tet) != 24:
        raise AssertionError("unexpected subgroup sizes in the octahedral model")
    return OctahedralModel(group=group, q8=q8, tet=tet)


def quaternion_group_q8() -> PermGroup:
    """Q_8 in its regular degree-8 representation."""
    els = sorted(_quaternion_close([Q_I, Q_J]))
    if len(els) != 8:
        raise AssertionError("Q_8 closure has wrong order")
    group, _ = regular_perm_group(els, quaternion_mul, "Q_8")
    return group


@lru_cache(maxsize=1)
def sl2_5_perm_group() -> PermGroup:
    """SL(2,5) acting on the 24 nonzero vectors of F_5^2."""
    points = sorted((x, y) for x in range(5) for y in range(5) if (x, y) != (0, 0))
    idx = {v: i for i, v in enumerate(points)}

    def act(mat, v):
        (a, b), (c, d) = mat
        return ((a * v[0] + b * v[1]) % 5, (c * v[0] + d * v[1]) % 5)

    def perm(mat) -> Permutation:
        return Permutation(tuple(idx[act(mat, v)] for v in points))

    gens = [perm(((1, 1), (0, 1))), perm(((0, 1), (4, 0)))]
    group = group_from_generators(24, gens, "2A_5")
    if group.order != 120:
        raise AssertionError("SL(2,5) closure has wrong order")
    return group


# ---------------------------------------------------------------------------
# The counting computation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CountingClass:
    """One conjugacy class of undominated finite subgroups of Sp(1) x C_2."""

    base: str
    type_tag: str  # FX1 | GRAPH | FXC2
    hd_label: str
    hd_order: int
    weyl: str
    inverts_circle: bool


@dataclass(frozen=True)
class _Ambient:
    normalizer_group: PermGroup  # N, the Sp(1)-normalizer of the base
    base_elements: tuple[Permutation, ...]  # F inside N
    product: PermGroup  # N x C_2


@lru_cache(maxsize=None)
def _ambient_for(base: str) -> _Ambient:
    if base == "2A5":
        N = sl2_5_perm_group()
        F = N.elements
    else:
        model = binary_octahedral_model()
        N = model.group
        F = {"2S4": N.elements, "2A4": model.tet, "Q8": model.q8}[base]
    return _Ambient(N, tuple(F), direct_product_with_c2(N, f"{N.name_hint} x C_2"))


def _weyl_name(ambient: _Ambient, subgroup: frozenset[Permutation]) -> str:
    norm = normalizer_elements(ambient.product, subgroup)
    return recognize(quotient_group(norm, subgroup).group.elements)


@lru_cache(maxsize=None)
def counting_oracle(base: str) -> tuple[CountingClass, ...]:
    """Classes of subgroups of F x C_2 with full projection to F, for one base.

    Only three shapes project onto F: F x 1, the graph of an epimorphism
    F -> C_2 (one class per orbit of index-2 kernels under the normalizer),
    and F x C_2.  Weyl groups are computed inside N x C_2 by brute force.
    """
    if base not in BASES:
        raise ValueError(f"unknown base {base!r}; expected one of {BASES}")
    amb = _ambient_for(base)
    label = BASE_LABELS[base]
    F = amb.base_elements
    f_group = amb.normalizer_group.subgroup(F)

    # Weyl group of F inside N alone; feeds the structural product names.
    w1_quotient = quotient_group(normalizer_elements(amb.normalizer_group, F), frozenset(F))
    w1_name = recognize(w1_quotient.group.elements)
    w1_order = w1_quotient.group.order

    records = []

    fx1 = frozenset(embed_in_product(g, False) for g in F)
    fx1_weyl = f"{w1_name} x C_2"
    norm_fx1 = normalizer_elements(amb.product, fx1)
    if len(norm_fx1) != 2 * w1_order * len(F):
        raise AssertionError("F x 1 normalizer disagrees with the product structure")
    records.append(
        CountingClass(base, "FX1", f"{label}x1", len(F), fx1_weyl, inverts_circle=False)
    )

    kernels = index2_kernels(f_group)
    graphs = [
        frozenset(embed_in_product(g, g not in set(K)) for g in F) for K in kernels
    ]
    seen: set[frozenset[Permutation]] = set()
    for S in graphs:
        if S in seen:
            continue
        orbit = {frozenset(p * s * p.inverse() for s in S) for p in amb.product.elements}
        fused = [g for g in graphs if g in orbit]
        seen.update(fused)
        records.append(
            CountingClass(
                base, "GRAPH", f"{label}^-", len(F), _weyl_name(amb, S), inverts_circle=True
            )
        )
    if len(seen) != len(set(graphs)):
        raise AssertionError("graph orbits do not partition the graphs")

    fxc2 = frozenset(embed_in_product(g, flip) for g in F for flip in (False, True))
    norm_fxc2 = normalizer_elements(amb.product, fxc2)
    if len(norm_fxc2) != w1_order * len(fxc2):
        raise AssertionError("F x C_2 normalizer disagrees with the product structure")
    records.append(
        CountingClass(base, "FXC2", f"{label}xC_2", 2 * len(F), w1_name, inverts_circle=True)
    )
    return tuple(records)


def all_counting_classes() -> tuple[CountingClass, ...]:
    """All ten classes, in base order then type order."""
    out = []
    for base in BASES:
        out.extend(counting_oracle(base))
    return tuple(out)


def classes_by_type() -> dict[str, tuple[CountingClass, ...]]:
    by_type: dict[str, list[CountingClass]] = {"FX1": [], "GRAPH": [], "FXC2": []}
    for rec in all_counting_classes():
        by_type[rec.type_tag].append(rec)
    return {k: tuple(v) for k, v in by_type.items()}
