"""Block enumeration for the seven supported ambient groups.

Maximal-rank blocks are computed from the root datum: identity components of
maximal-rank subgroups correspond to reflection subgroup classes R of the
Weyl group, component groups H_d range over subgroup classes of the quotient
N_W(R)/R, and the block dimension is read from the rational decomposition of
the fixed sublattice of R as an H_d-module.  Rank-1 blocks are expanded from
curated connected-subgroup descriptors; rank-0 rows are static data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from . import perms, polyhedral, roots
from .errors import ClassificationError
from .reps import DecompositionProfile, IntegralRep, decompose_profile

GROUPS_RANK2 = {"SU2xSU2": "A1xA1", "SU3": "A2", "Sp2": "C2"}
GROUPS_RANK1 = ("SO2", "O2", "SO3", "Sp1")
ALL_GROUPS = ("SO2", "O2", "SO3", "Sp1", "SU2xSU2", "SU3", "Sp2")

AMBIENT_RANK = {g: (1 if g in GROUPS_RANK1 else 2) for g in ALL_GROUPS}

DISPLAY_NAME = {
    "SO2": "SO(2)",
    "O2": "O(2)",
    "SO3": "SO(3)",
    "Sp1": "Sp(1)",
    "SU2xSU2": "SU(2)xSU(2)",
    "SU3": "SU(3)",
    "Sp2": "Sp(2)",
}

MODEL_LABELS = {
    "discrete": "Discrete",
    "cotoral_line": "gq1",
    "weyl_finite": "gqwf",
    "mixed": "mixed",
    "toral": "gqtoral",
}

# Names of the maximal-rank identity components, keyed by reflection class.
_MAXRANK_HE_NAMES = {
    "C2": {
        "D_8": "Sp(2)",
        "V": "Sp(1)xSp(1)",
        "V'": "Sp(1)xSp(1)",
        "X": "TxSp(1)",
        "X'": "Sp(1)xT",
        "C_1": "T^2",
    },
    "A2": {"D_6": "SU(3)", "D_2": "U(2)", "C_1": "T^2"},
    "A1xA1": {
        "D_4": "SU(2)xSU(2)",
        "C_2^x": "SU(2)xT",
        "C_2^y": "TxSU(2)",
        "C_1": "T^2",
    },
}


@dataclass(frozen=True)
class ConnectedSubgroupDescriptor:
    """Identity component of a potential dominant subgroup."""

    name: str
    rank: int
    dim: int
    ambient: str
    weyl_of_he: str
    lambda0_dim: int
    lambda0_action: str | None = None
    provenance: str = ""

    @property
    def is_maximal_torus(self) -> bool:
        return self.rank == self.dim == AMBIENT_RANK[self.ambient]


@dataclass(frozen=True)
class DominantRecord:
    """One row of a block table: a family of conjugacy classes of dominant
    subgroups sharing identity component, dimension data and block kind."""

    group: str
    rank: int
    he: ConnectedSubgroupDescriptor
    subsystem: str | None
    hd: str
    hd_order: int
    multiplicity: int
    weyl: str
    profile: DecompositionProfile
    kind: str
    model_label: str
    weyl_per_class: tuple[str, ...] | None = None
    placeholder: bool = False

    @property
    def dim(self) -> int:
        return self.profile.dimension

    def pair_label(self) -> str:
        tag = f", {self.subsystem}" if self.subsystem and self.subsystem != "C_1" else ""
        return f"({self.he.name}, {self.hd}){tag}"


def classify_block_kind(profile: DecompositionProfile, he: ConnectedSubgroupDescriptor) -> str:
    """Block kind from the (a, b) profile and the dominant identity component."""
    a, b = profile.a, profile.b
    if (a, b) == (0, 0):
        return "discrete"
    if b == 0 and a == AMBIENT_RANK[he.ambient]:
        if not he.is_maximal_torus:
            raise ClassificationError(
                f"full-rank trivial profile ({a},0) on non-torus component {he.name}"
            )
        return "toral"
    if (a, b) == (1, 0):
        return "cotoral_line"
    if a == 0:
        return "weyl_finite"
    if a > 0 and b > 0:
        return "mixed"
    raise ClassificationError(f"profile ({a},{b}) cannot be classified")


def _record(
    group: str,
    he: ConnectedSubgroupDescriptor,
    subsystem: str | None,
    hd: str,
    hd_order: int,
    multiplicity: int,
    weyl: str,
    profile: DecompositionProfile,
    weyl_per_class: tuple[str, ...] | None = None,
    placeholder: bool = False,
) -> DominantRecord:
    kind = classify_block_kind(profile, he)
    return DominantRecord(
        group=group,
        rank=he.rank,
        he=he,
        subsystem=subsystem,
        hd=hd,
        hd_order=hd_order,
        multiplicity=multiplicity,
        weyl=weyl,
        profile=profile,
        kind=kind,
        model_label=MODEL_LABELS[kind],
        weyl_per_class=weyl_per_class,
        placeholder=placeholder,
    )


# ---------------------------------------------------------------------------
# Maximal-rank blocks
# ---------------------------------------------------------------------------

_TYPE_TO_GROUP = {v: k for k, v in GROUPS_RANK2.items()}


@dataclass(frozen=True)
class WeylQuotientData:
    """N_W(R)/R as a permutation group, with the coset action on the fixed
    sublattice of R."""

    quotient: perms.QuotientGroup
    basis: tuple[roots.Vec, ...]
    coset_matrices: tuple[roots.Mat, ...]  # indexed like quotient.cosets

    def matrices_for(self, subgroup_elements) -> tuple[roots.Mat, ...]:
        mats = set()
        for p in subgroup_elements:
            mats.add(self.coset_matrices[p.images[0]])
        return tuple(sorted(mats))


def weyl_quotient_data(W: roots.MatrixGroup, R: roots.WeylSubgroupClass) -> WeylQuotientData:
    sub = frozenset(R.representative.elements)
    basis = roots.fixed_lattice_basis(R.representative)
    norm = roots.normalizer_in_weyl(W, sub)

    cosets: list[frozenset[roots.Mat]] = []
    seen: set[roots.Mat] = set()
    for g in sorted(norm):
        if g in seen:
            continue
        coset = frozenset(roots.mat_mul(g, h) for h in sub)
        seen.update(coset)
        cosets.append(coset)
    cosets.sort(key=lambda c: min(c))
    identity_coset = next(c for c in cosets if roots.IDENTITY in c)
    cosets.remove(identity_coset)
    cosets.insert(0, identity_coset)

    coset_index = {c: i for i, c in enumerate(cosets)}

    def mul(a, b):
        prod = roots.mat_mul(min(a), min(b))
        for c in cosets:
            if prod in c:
                return c
        raise AssertionError("coset product escaped; R not normal in its normalizer?")

    group, _ = perms.regular_perm_group(cosets, mul)
    quotient = perms.QuotientGroup(group, tuple())  # cosets stored separately below

    mats = []
    for c in cosets:
        images = {roots.restrict_to_lattice(g, basis) for g in c}
        if len(images) != 1:
            raise AssertionError("coset action on the fixed lattice is not well defined")
        mats.append(next(iter(images)))

    # Rebuild the quotient with matrix cosets attached (perm cosets unused here).
    quotient = perms.QuotientGroup(group, tuple(frozenset() for _ in cosets))
    return WeylQuotientData(quotient=quotient, basis=tuple(basis), coset_matrices=tuple(mats))


def _hd_label(
    W: roots.MatrixGroup,
    R: roots.WeylSubgroupClass,
    data: WeylQuotientData,
    cls: perms.SubgroupClass,
) -> str:
    if cls.order == 1:
        return "C_1"
    if R.order == 1:
        # Cosets are singletons; map the perm subgroup back to a matrix subgroup.
        mats = frozenset(data.matrices_for(cls.representative))
        return roots.class_label_map(W)[mats]
    return perms.recognize(cls.representative)


def maximal_rank_blocks(rd: roots.RootDatum) -> tuple[DominantRecord, ...]:
    """Blocks dominated by maximal-rank subgroups, one record per (R, H_d).

    Only reflection classes R correspond to connected subgroups; for each one
    the component groups H_d run over subgroup classes of N_W(R)/R, acting on
    the fixed sublattice of R.
    """
    group = _TYPE_TO_GROUP[rd.type_label]
    W = roots.weyl_group(rd)
    he_names = _MAXRANK_HE_NAMES[rd.type_label]
    records = []
    classes = [c for c in roots.reflection_subgroup_classes(W) if c.is_reflection_group]
    for R in sorted(classes, key=lambda c: -c.order):
        data = weyl_quotient_data(W, R)
        n_roots = sum(1 for f in R.representative.reflection_flags if f) * 2
        he = ConnectedSubgroupDescriptor(
            name=he_names[R.label],
            rank=2,
            dim=2 + n_roots,
            ambient=group,
            weyl_of_he=perms.recognize(data.quotient.group.elements),
            lambda0_dim=len(data.basis),
            provenance=f"computed from the reflection class {R.label}",
        )
        for cls in sorted(perms.subgroup_classes(data.quotient.group), key=lambda c: -c.order):
            rep = IntegralRep.from_matrices(len(data.basis), data.matrices_for(cls.representative))
            profile = decompose_profile(rep)
            weyl = perms.normalizer_quotient(data.quotient.group, cls)
            records.append(
                _record(
                    group=group,
                    he=he,
                    subsystem=R.label,
                    hd=_hd_label(W, R, data, cls),
                    hd_order=cls.order,
                    multiplicity=1,
                    weyl=weyl,
                    profile=profile,
                )
            )
    records.sort(key=_emission_key)
    return tuple(records)


# ---------------------------------------------------------------------------
# Rank-1 blocks from curated descriptors
# ---------------------------------------------------------------------------


@lru_cache(maxsize=1)
def _curated() -> dict:
    path = resources.files("lieblocks").joinpath("data/connected_subgroups.json")
    return json.loads(path.read_text())


def _profile_from_template(dim: int, action: str | None) -> DecompositionProfile:
    if dim == 0:
        return decompose_profile(IntegralRep.trivial(0))
    if action == "trivial":
        return decompose_profile(IntegralRep.trivial(1))
    if action == "sign":
        return decompose_profile(IntegralRep.sign())
    raise ValueError(f"unknown lambda0 action {action!r}")


def _descriptor(group: str, raw: dict) -> ConnectedSubgroupDescriptor:
    return ConnectedSubgroupDescriptor(
        name=raw["name"],
        rank=raw["rank"],
        dim=raw["dim"],
        ambient=group,
        weyl_of_he=raw["weyl_of_he"],
        lambda0_dim=raw["lambda0"]["dim"],
        lambda0_action=raw["lambda0"].get("action"),
        provenance=raw.get("provenance", ""),
    )


_FAMILY_ROWS = (
    # (oracle type, H_d family label, circle action)
    ("FX1", "Fx1", "trivial"),
    ("GRAPH", "F^-", "sign"),
    ("FXC2", "FxC_2", "sign"),
)


def _expand_descriptor(group: str, he: ConnectedSubgroupDescriptor) -> list[DominantRecord]:
    curated = _curated()
    weyl_kind = he.weyl_of_he
    zero_profile = _profile_from_template(0, None)

    if weyl_kind == "U(1)":
        # A circle Weyl group: every finite H_d is dominated, no new rows.
        return []

    if weyl_kind in ("Sp(1)", "SO(3)"):
        families = curated["polyhedral_families"][weyl_kind]
        return [
            _record(group, he, None, label, order, 1, weyl, zero_profile)
            for label, order, weyl in families
        ]

    if weyl_kind == "C_2-finite":
        return [
            _record(group, he, None, "C_2", 2, 1, "1", zero_profile),
            _record(group, he, None, "C_1", 1, 1, "C_2", zero_profile),
        ]

    if weyl_kind == "1":
        return [_record(group, he, None, "C_1", 1, 1, "1", zero_profile)]

    if weyl_kind == "Sp(1)xC_2":
        by_type = polyhedral.classes_by_type()
        out = []
        for type_tag, hd_label, action in _FAMILY_ROWS:
            classes = by_type[type_tag]
            profile = _profile_from_template(1, action)
            out.append(
                _record(
                    group,
                    he,
                    None,
                    hd_label,
                    0,
                    len(classes),
                    ", ".join(c.weyl for c in classes),
                    profile,
                    weyl_per_class=tuple(c.weyl for c in classes),
                )
            )
        return out

    raise ValueError(f"unknown Weyl kind {weyl_kind!r} for descriptor {he.name}")


def rank1_blocks(group: str) -> tuple[DominantRecord, ...]:
    """Rank-1 dominant rows for one of the three rank-2 ambient groups."""
    if group not in GROUPS_RANK2:
        raise ValueError(f"unknown rank-2 ambient group {group!r}")
    records: list[DominantRecord] = []
    for raw in _curated()["connected_rank1"][group]:
        he = _descriptor(group, raw)
        records.extend(_expand_descriptor(group, he))
    records.sort(key=_emission_key)
    return tuple(records)


# ---------------------------------------------------------------------------
# Rank-0 rows and table assembly
# ---------------------------------------------------------------------------


def _finite_he(group: str) -> ConnectedSubgroupDescriptor:
    return ConnectedSubgroupDescriptor(
        name="1",
        rank=0,
        dim=0,
        ambient=group,
        weyl_of_he="-",
        lambda0_dim=0,
        provenance="finite subgroup; trivial identity component",
    )


def _rank0_rows(group: str) -> list[DominantRecord]:
    curated = _curated()["finite_rank0"].get(group)
    zero_profile = _profile_from_template(0, None)
    he = _finite_he(group)
    if curated == "placeholder":
        return [
            _record(group, he, None, "Various", 0, 1, "Various", zero_profile, placeholder=True)
        ]
    if curated is None:
        return []
    return [
        _record(group, he, None, label, order, 1, weyl, zero_profile)
        for label, order, weyl in curated
    ]


def _emission_key(r: DominantRecord) -> tuple:
    return (-r.rank, -r.he.dim, -r.hd_order)


@dataclass(frozen=True)
class BlockTable:
    """All block rows for one ambient group, ordered big-to-small."""

    group: str
    rows: tuple[DominantRecord, ...]

    @property
    def ambient_rank(self) -> int:
        return AMBIENT_RANK[self.group]

    def countable_rows(self) -> tuple[DominantRecord, ...]:
        return tuple(r for r in self.rows if not r.placeholder)

    def summary(self) -> list[dict]:
        """Per-rank statistics, recomputed from the rows every time."""
        out = []
        for rank in sorted({r.rank for r in self.countable_rows()}, reverse=True):
            rows = [r for r in self.countable_rows() if r.rank == rank]
            rows_by_dim: dict[int, int] = {}
            classes_by_dim: dict[int, int] = {}
            for r in rows:
                rows_by_dim[r.dim] = rows_by_dim.get(r.dim, 0) + 1
                classes_by_dim[r.dim] = classes_by_dim.get(r.dim, 0) + r.multiplicity
            entry = {
                "rank": rank,
                "rows_by_dim": dict(sorted(rows_by_dim.items(), reverse=True)),
                "classes_by_dim": dict(sorted(classes_by_dim.items(), reverse=True)),
            }
            if rank == 2 and self.group in GROUPS_RANK2:
                split = {"toral": 0, "mixed": 0, "flat": 0}
                for r in rows:
                    if r.dim == 2:
                        split[{"toral": "toral", "mixed": "mixed", "weyl_finite": "flat"}[r.kind]] += 1
                entry["two_dim_split"] = split
            out.append(entry)
        return out


@lru_cache(maxsize=None)
def assemble_table(group: str) -> BlockTable:
    """Full block table for a rank-2 ambient group."""
    if group not in GROUPS_RANK2:
        raise ValueError(f"unknown rank-2 ambient group {group!r}")
    rd = roots.build_root_datum(GROUPS_RANK2[group])
    rows = list(maximal_rank_blocks(rd)) + list(rank1_blocks(group)) + _rank0_rows(group)
    rows.sort(key=_emission_key)
    return BlockTable(group=group, rows=tuple(rows))


@lru_cache(maxsize=None)
def rank1_ambient_table(group: str) -> BlockTable:
    """Curated block decomposition for a rank-1 ambient group."""
    if group not in GROUPS_RANK1:
        raise ValueError(f"unknown rank-1 ambient group {group!r}")
    rows = []
    for raw in _curated()["ambient_rank1_blocks"][group]:
        he = ConnectedSubgroupDescriptor(
            name=raw["he"],
            rank=raw["he_rank"],
            dim=raw["he_dim"],
            ambient=group,
            weyl_of_he="-",
            lambda0_dim=1 if raw["he_rank"] == 1 and raw["torus"] else 0,
            provenance="curated rank-1 ambient data",
        )
        a, b = raw["profile"]
        if (a, b) == (0, 0):
            profile = _profile_from_template(0, None)
        elif (a, b) == (1, 0):
            profile = _profile_from_template(1, "trivial")
        elif (a, b) == (0, 1):
            profile = _profile_from_template(1, "sign")
        else:
            raise ValueError(f"unexpected curated profile {(a, b)}")
        rows.append(
            _record(group, he, None, raw["hd"], raw["hd_order"], 1, raw["weyl"], profile)
        )
    rows.sort(key=_emission_key)
    return BlockTable(group=group, rows=tuple(rows))


def table_for(group: str) -> BlockTable:
    if group in GROUPS_RANK2:
        return assemble_table(group)
    if group in GROUPS_RANK1:
        return rank1_ambient_table(group)
    raise ValueError(f"unknown group {group!r}; expected one of {ALL_GROUPS}")


# ---------------------------------------------------------------------------
# Regular rank-1 candidates
# ---------------------------------------------------------------------------

# Candidate lines are spanned by primitive vectors of bounded height; the
# lines relevant here are symmetry axes of the root systems, all of height 1.
HEIGHT_BOUND = 4


@dataclass(frozen=True)
class RegularLineClass:
    """A Weyl orbit of regular lines on which every root restricts to 0 or to
    a single character up to sign."""

    lines: tuple[roots.Vec, ...]


def regular_rank1_check(rd: roots.RootDatum) -> tuple[RegularLineClass, ...]:
    """Regular lines whose root restrictions take a single nonzero value.

    Lines perpendicular to a root are singular and excluded.  The output
    groups the surviving lines into Weyl orbits; only the product-type
    lattice has any, namely the diagonal class.
    """
    W = roots.weyl_group(rd)
    seen: set[roots.Vec] = set()
    candidates = []
    for x in range(-HEIGHT_BOUND, HEIGHT_BOUND + 1):
        for y in range(-HEIGHT_BOUND, HEIGHT_BOUND + 1):
            if (x, y) == (0, 0):
                continue
            from math import gcd

            if gcd(abs(x), abs(y)) != 1:
                continue
            v = (x, y) if (x, y) > (-x, -y) else (-x, -y)
            if v in seen:
                continue
            seen.add(v)
            values = {abs(rd.pairing(alpha, v)) for alpha in rd.roots}
            nonzero = sorted(values - {0})
            if len(nonzero) != 1:
                continue
            if 0 in values:
                continue  # perpendicular to some root: singular
            candidates.append(v)

    orbits = []
    remaining = set(candidates)
    while remaining:
        v = min(remaining)
        orbit = set()
        for g in W.elements:
            w = roots.mat_vec(g, v)
            w = w if w > roots.neg_vec(w) else roots.neg_vec(w)
            orbit.add(w)
        remaining -= orbit
        orbits.append(RegularLineClass(lines=tuple(sorted(orbit))))
    return tuple(orbits)


# ---------------------------------------------------------------------------
# Discrepancy ledger
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LedgerEntry:
    """A recorded divergence between computed values and the source tables."""

    key: str
    groups: tuple[str, ...]
    location: str
    published: str
    computed: str


LEDGER: tuple[LedgerEntry, ...] = (
    LedgerEntry(
        key="a1a1-working-table-d4",
        groups=("SU2xSU2",),
        location="source working table for the product-of-two-SU(2)s lattice, row (T^2, D_4)",
        published="block dimension 0+1",
        computed="block dimension 0+2 (two distinct nontrivial characters; agrees with the final table)",
    ),
    LedgerEntry(
        key="su3-two-dim-split",
        groups=("SU3",),
        location="source summary for SU(3), rank-2 toral/mixed/flat split",
        published="2 = t^1 m^2 f^0 (does not sum to 2)",
        computed="t1 m1 f0 (one toral and one mixed two-dimensional block)",
    ),
    LedgerEntry(
        key="sp2-long-circle-model-pointer",
        groups=("Sp2",),
        location="source final table for Sp(2), rows (T_long, Fx1) and (T_short, Fx1)",
        published="model pointer gqwf for (T_long, Fx1) despite its own 1+0 dimension",
        computed="cotoral lines with model gq1 for both circle families",
    ),
    LedgerEntry(
        key="counting-graph-weyls",
        groups=("Sp2", "SU2xSU2"),
        location="source counting enumeration for Sp(1) x C_2, graph-type rows",
        published="Weyl groups 1 and D_6 for the graphs over 2Sigma_4 and Q_8",
        computed="C_2 and D_4 via N_{N x C_2}(S)/S (orders 2 and 4 by direct normalizer computation)",
    ),
    LedgerEntry(
        key="su2xsu2-factor-weyls",
        groups=("SU2xSU2",),
        location="source final table for SU(2)xSU(2), rows (1xSU(2), F) and (SU(2)x1, F)",
        published="Weyl group 1 for all eight rows",
        computed="1, 1, C_2, D_6 per family, matching the curated polyhedral data and the Sp(2) analogues",
    ),
)


def ledger_for(group: str | None = None) -> tuple[LedgerEntry, ...]:
    if group is None:
        return LEDGER
    return tuple(e for e in LEDGER if group in e.groups)
