"""Integral root data on the rank-2 lattice and reflection subgroups of the
Weyl group.

Everything acts on Z^2 through 2x2 integer matrices kept as nested tuples, so
all linear algebra is exact.  The three lattice types are normalized so that
every Weyl matrix is integral:

* A1xA1: roots +-e1, +-e2 with the standard form;
* A2: the hexagonal lattice with Gram matrix [[2,-1],[-1,2]];
* C2: long roots +-2e1, +-2e2 and short roots +-e1+-e2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

Vec = tuple[int, int]
Mat = tuple[tuple[int, ...], ...]

ROOT_TYPE_LABELS = ("A1xA1", "A2", "C2")

IDENTITY: Mat = ((1, 0), (0, 1))
NEG_IDENTITY: Mat = ((-1, 0), (0, -1))


def mat_mul(a: Mat, b: Mat) -> Mat:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def mat_vec(m: Mat, v: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sum(m[i][k] * v[k] for k in range(len(v))) for i in range(len(m)))


def mat_det(m: Mat) -> int:
    if len(m) == 1:
        return m[0][0]
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def mat_order(m: Mat, bound: int = 24) -> int:
    x = m
    for k in range(1, bound + 1):
        if x == IDENTITY:
            return k
        x = mat_mul(x, m)
    raise ValueError("matrix has order beyond the expected bound")


def neg_vec(v: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-x for x in v)


@dataclass(frozen=True)
class RootDatum:
    """Roots, positivity data and the invariant form for one lattice type."""

    type_label: str
    roots: tuple[Vec, ...]
    positive_roots: tuple[Vec, ...]
    simple_roots: tuple[Vec, ...]
    invariant_form: Mat
    lattice_rank: int = 2

    def pairing(self, u: Vec, v: Vec) -> int:
        b = self.invariant_form
        return sum(u[i] * b[i][j] * v[j] for i in range(2) for j in range(2))


_ROOT_DATA = {
    "A1xA1": {
        "positive": ((1, 0), (0, 1)),
        "simple": ((1, 0), (0, 1)),
        "form": ((1, 0), (0, 1)),
    },
    "A2": {
        "positive": ((1, 0), (0, 1), (1, 1)),
        "simple": ((1, 0), (0, 1)),
        "form": ((2, -1), (-1, 2)),
    },
    "C2": {
        "positive": ((1, -1), (0, 2), (1, 1), (2, 0)),
        "simple": ((1, -1), (0, 2)),
        "form": ((1, 0), (0, 1)),
    },
}


def build_root_datum(type_label: str) -> RootDatum:
    """Root datum for one of the labels A1xA1, A2, C2."""
    if type_label not in _ROOT_DATA:
        raise ValueError(f"unknown root datum label {type_label!r}; expected one of {ROOT_TYPE_LABELS}")
    data = _ROOT_DATA[type_label]
    positive = data["positive"]
    roots = tuple(sorted(positive + tuple(neg_vec(r) for r in positive)))
    return RootDatum(
        type_label=type_label,
        roots=roots,
        positive_roots=positive,
        simple_roots=data["simple"],
        invariant_form=data["form"],
    )


def reflection_matrix(datum: RootDatum, root: Vec) -> Mat:
    """The reflection v -> v - 2 B(v,a)/B(a,a) a as an integer matrix."""
    norm = datum.pairing(root, root)
    cols = []
    for e in ((1, 0), (0, 1)):
        num = 2 * datum.pairing(e, root)
        if num % norm != 0:
            raise ValueError(f"reflection in {root} is not integral on this lattice")
        c = num // norm
        cols.append((e[0] - c * root[0], e[1] - c * root[1]))
    return ((cols[0][0], cols[1][0]), (cols[0][1], cols[1][1]))


def is_reflection(m: Mat) -> bool:
    """Determinant -1 and order 2; such a matrix fixes a rank-1 sublattice."""
    return mat_det(m) == -1 and mat_mul(m, m) == IDENTITY


@dataclass(frozen=True)
class MatrixGroup:
    """A finite group of 2x2 integer matrices, with reflection flags."""

    elements: tuple[Mat, ...]
    generators: tuple[Mat, ...]
    reflection_flags: tuple[bool, ...]
    datum: RootDatum | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def reflections(self) -> tuple[Mat, ...]:
        return tuple(m for m, f in zip(self.elements, self.reflection_flags) if f)


def matrix_closure(generators, cap: int = 64) -> frozenset[Mat]:
    els: set[Mat] = {IDENTITY}
    els.update(generators)
    frontier = list(els)
    while frontier:
        new = []
        for g in generators:
            for x in frontier:
                y = mat_mul(g, x)
                if y not in els:
                    els.add(y)
                    new.append(y)
                    if len(els) > cap:
                        raise ValueError("matrix closure exceeded expected bound")
        frontier = new
    return frozenset(els)


def weyl_group(datum: RootDatum) -> MatrixGroup:
    """The Weyl group generated by the simple-root reflections."""
    gens = tuple(reflection_matrix(datum, r) for r in datum.simple_roots)
    els = tuple(sorted(matrix_closure(gens)))
    return MatrixGroup(
        elements=els,
        generators=gens,
        reflection_flags=tuple(is_reflection(m) for m in els),
        datum=datum,
    )


# ---------------------------------------------------------------------------
# Subgroup classes
# ---------------------------------------------------------------------------


def all_subgroups(W: MatrixGroup) -> tuple[frozenset[Mat], ...]:
    """Every subgroup, by closing every subset of elements.

    Exponential in |W| but exact; the Weyl groups here have order at most 8.
    """
    if W.order > 12:
        raise ValueError("subset enumeration is only intended for tiny groups")
    els = W.elements
    found: set[frozenset[Mat]] = set()
    for mask in range(1 << len(els)):
        subset = [els[i] for i in range(len(els)) if mask >> i & 1]
        found.add(matrix_closure(subset, cap=W.order))
    return tuple(sorted(found, key=_subgroup_key))


def _subgroup_key(sub: frozenset[Mat]) -> tuple:
    return (len(sub), tuple(sorted(sub)))


def conjugate_subgroup(sub: frozenset[Mat], g: Mat) -> frozenset[Mat]:
    det = mat_det(g)
    if det not in (1, -1):
        raise ValueError("conjugator must be unimodular")
    inv = _mat_inverse_unimodular(g)
    return frozenset(mat_mul(mat_mul(g, h), inv) for h in sub)


def _mat_inverse_unimodular(g: Mat) -> Mat:
    d = mat_det(g)
    return ((g[1][1] * d, -g[0][1] * d), (-g[1][0] * d, g[0][0] * d))


@dataclass(frozen=True)
class WeylSubgroupClass:
    """A conjugacy class of subgroups of a Weyl group."""

    representative: MatrixGroup
    conjugates: tuple[tuple[Mat, ...], ...]
    is_reflection_group: bool
    label: str

    @property
    def order(self) -> int:
        return self.representative.order


def _as_matrix_group(sub: frozenset[Mat], datum: RootDatum | None) -> MatrixGroup:
    els = tuple(sorted(sub))
    return MatrixGroup(
        elements=els,
        generators=els,
        reflection_flags=tuple(is_reflection(m) for m in els),
        datum=datum,
    )


def generated_by_reflections(sub: frozenset[Mat]) -> bool:
    refl = [m for m in sub if is_reflection(m)]
    return matrix_closure(refl, cap=len(sub)) == sub


_FULL_GROUP_LABELS = {"A1xA1": "D_4", "A2": "D_6", "C2": "D_8"}


def _root_of_reflection(datum: RootDatum, m: Mat) -> Vec:
    for r in datum.positive_roots:
        if reflection_matrix(datum, r) == m:
            return r
    raise ValueError("matrix is not a root reflection of this datum")


def _class_label(datum: RootDatum | None, sub: frozenset[Mat], weyl_order: int) -> str:
    n = len(sub)
    if n == 1:
        return "C_1"
    if datum is None:
        return f"order{n}"
    t = datum.type_label
    if n == weyl_order:
        return _FULL_GROUP_LABELS[t]
    if generated_by_reflections(sub):
        roots = [_root_of_reflection(datum, m) for m in sub if is_reflection(m)]
        if t == "C2":
            long = all(datum.pairing(r, r) == 4 for r in roots)
            if n == 2:
                return "X" if long else "X'"
            if n == 4:
                return "V" if long else "V'"
        if t == "A1xA1":
            return "C_2^x" if roots[0] == (1, 0) else "C_2^y"
        if t == "A2":
            return "D_2"
    else:
        if sub == frozenset([IDENTITY, NEG_IDENTITY]):
            return "C_2" if t == "C2" else "C_2^diag"
        if n == 3:
            return "C_3"
        if n == 4:
            return "C_4"
    return f"order{n}"


def reflection_subgroup_classes(W: MatrixGroup) -> tuple[WeylSubgroupClass, ...]:
    """All conjugacy classes of subgroups of W, flagged and labeled.

    Classes are sorted by (order, label); reflection classes are the ones
    generated by their own reflection elements (the trivial subgroup counts).
    """
    subgroups = all_subgroups(W)
    remaining = set(subgroups)
    classes = []
    while remaining:
        rep = min(remaining, key=_subgroup_key)
        orbit = {conjugate_subgroup(rep, g) for g in W.elements}
        remaining -= orbit
        label = _class_label(W.datum, rep, W.order)
        classes.append(
            WeylSubgroupClass(
                representative=_as_matrix_group(rep, W.datum),
                conjugates=tuple(sorted((tuple(sorted(s)) for s in orbit))),
                is_reflection_group=generated_by_reflections(rep),
                label=label,
            )
        )
    classes.sort(key=lambda c: (c.order, c.label))
    return tuple(classes)


def class_label_map(W: MatrixGroup) -> dict[frozenset[Mat], str]:
    """Label of the class of every individual subgroup of W."""
    out: dict[frozenset[Mat], str] = {}
    for cls in reflection_subgroup_classes(W):
        for sub in cls.conjugates:
            out[frozenset(sub)] = cls.label
    return out


# ---------------------------------------------------------------------------
# Fixed sublattices
# ---------------------------------------------------------------------------


def _primitive(v: tuple[int, ...]) -> tuple[int, ...]:
    g = gcd(*[abs(x) for x in v])
    w = tuple(x // g for x in v)
    for x in w:
        if x != 0:
            return w if x > 0 else tuple(-y for y in w)
    raise ValueError("zero vector")


def kernel_basis(rows: list[tuple[int, int]]) -> tuple[Vec, ...]:
    """Saturated basis of {v in Z^2 : r . v = 0 for all rows r}."""
    rows = [r for r in rows if r != (0, 0)]
    if not rows:
        return ((1, 0), (0, 1))
    a, b = rows[0]
    v = _primitive((b, -a))
    if all(r[0] * v[0] + r[1] * v[1] == 0 for r in rows):
        return (v,)
    return ()


def fixed_lattice_basis(sub) -> tuple[Vec, ...]:
    """Saturated basis of the common fixed sublattice of a set of matrices."""
    rows: list[tuple[int, int]] = []
    elements = sub.elements if isinstance(sub, MatrixGroup) else tuple(sub)
    for m in elements:
        rows.append((m[0][0] - 1, m[0][1]))
        rows.append((m[1][0], m[1][1] - 1))
    return kernel_basis(rows)


def restrict_to_lattice(m: Mat, basis: tuple[Vec, ...]) -> Mat:
    """Matrix of m on the span of `basis`, which m must preserve."""
    if not basis:
        return ()
    if len(basis) == 2:
        return m
    (v,) = basis
    w = mat_vec(m, v)
    if w == v:
        return ((1,),)
    if w == neg_vec(v):
        return ((-1,),)
    raise ValueError("matrix does not preserve the sublattice")


@dataclass(frozen=True)
class FixedSublattice:
    """Fixed lattice of a reflection-class representative with the induced
    action of the normalizer quotient (distinct matrices only)."""

    basis: tuple[Vec, ...]
    action: tuple[Mat, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)


def normalizer_in_weyl(W: MatrixGroup, sub: frozenset[Mat]) -> tuple[Mat, ...]:
    return tuple(g for g in W.elements if conjugate_subgroup(sub, g) == sub)


def fixed_sublattice(R: WeylSubgroupClass, W: MatrixGroup) -> FixedSublattice:
    """Fixed sublattice of R's representative plus the N_W(R)/R action on it.

    The subgroup R acts trivially on its own fixed lattice, so the action
    descends to the quotient; a rank-0 lattice yields the trivial action.
    """
    sub = frozenset(R.representative.elements)
    basis = fixed_lattice_basis(R.representative)
    norm = normalizer_in_weyl(W, sub)
    mats = {restrict_to_lattice(g, basis) for g in norm}
    return FixedSublattice(basis=basis, action=tuple(sorted(mats)))


def natural_class_rep(W: MatrixGroup, label: str) -> tuple[Mat, ...]:
    """Element list of the subgroup class with the given label, acting on Z^2."""
    for cls in reflection_subgroup_classes(W):
        if cls.label == label:
            return cls.representative.elements
    raise ValueError(f"no subgroup class labeled {label!r}")
