"""Rational decomposition of integral representations of dimension at most 2.

The block dimension attached to a dominant subgroup is read off from the
decomposition of its fundamental lattice over Q: `a` counts trivial summands,
`b` counts nontrivial simple summands with multiplicity.  For these finite
integer actions the only rational eigenvalues are +-1, so the splitting test
for a 2-dimensional piece reduces to finding a common invariant line.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable

from .roots import IDENTITY, NEG_IDENTITY, Mat, kernel_basis, mat_det, mat_mul, mat_vec, neg_vec

EMPTY_MATRIX: Mat = ()


@dataclass(frozen=True)
class IntegralRep:
    """A finite group acting by integer matrices of size dim <= 2."""

    dim: int
    elements: tuple[Mat, ...]

    @staticmethod
    def from_matrices(dim: int, matrices: Iterable[Mat]) -> "IntegralRep":
        if dim == 0:
            return IntegralRep(0, (EMPTY_MATRIX,))
        els: set[Mat] = {_identity(dim)}
        els.update(matrices)
        frontier = list(els)
        while frontier:
            new = []
            for g in list(els):
                for x in frontier:
                    y = mat_mul(g, x)
                    if y not in els:
                        els.add(y)
                        new.append(y)
                        if len(els) > 64:
                            raise ValueError("representation closure unexpectedly large")
            frontier = new
        for m in els:
            if len(m) != dim or mat_det(m) not in (1, -1):
                raise ValueError("matrices must be unimodular of the stated dimension")
        return IntegralRep(dim, tuple(sorted(els)))

    @staticmethod
    def trivial(dim: int) -> "IntegralRep":
        if dim == 0:
            return IntegralRep(0, (EMPTY_MATRIX,))
        return IntegralRep(dim, (_identity(dim),))

    @staticmethod
    def sign(dim: int = 1) -> "IntegralRep":
        if dim != 1:
            raise ValueError("sign template is 1-dimensional")
        return IntegralRep(1, (((1,),), ((-1,),)))


def _identity(dim: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim))


@dataclass(frozen=True)
class Summand:
    """One rational summand: 'trivial', 'sign character' or '2-dim simple'.

    For 1-dimensional summands `vector` is a primitive integral vector
    spanning an invariant line (None for dim-1 representations and for the
    simple 2-dimensional case).
    """

    kind: str
    vector: tuple[int, ...] | None = None


@dataclass(frozen=True)
class DecompositionProfile:
    a: int
    b: int
    summands: tuple[Summand, ...]

    @property
    def dimension(self) -> int:
        return self.a + self.b


def fixed_space(rep: IntegralRep) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Dimension and saturated basis of the common fixed sublattice."""
    if rep.dim == 0:
        return 0, ()
    if rep.dim == 1:
        if all(m == ((1,),) for m in rep.elements):
            return 1, ((1,),)
        return 0, ()
    rows: list[tuple[int, int]] = []
    for m in rep.elements:
        rows.append((m[0][0] - 1, m[0][1]))
        rows.append((m[1][0], m[1][1] - 1))
    basis = kernel_basis(rows)
    return len(basis), basis


def fixed_dim(rep: IntegralRep) -> int:
    """Dimension over Q of the common fixed subspace."""
    return fixed_space(rep)[0]


def _primitive(v: tuple[int, ...]) -> tuple[int, ...]:
    g = gcd(*[abs(x) for x in v])
    w = tuple(x // g for x in v)
    for x in w:
        if x:
            return w if x > 0 else tuple(-y for y in w)
    raise ValueError("zero vector")


def _eigenlines(m: Mat) -> list[tuple[int, int]]:
    """Rational eigenlines of a 2x2 finite-order integer matrix (+-1 only)."""
    lines = []
    for shift in (-1, 1):
        shifted = ((m[0][0] - shift, m[0][1]), (m[1][0], m[1][1] - shift))
        rows = [shifted[0], shifted[1]]
        basis = kernel_basis(rows)
        if len(basis) == 1:
            lines.append(basis[0])
        elif len(basis) == 2:
            return [(1, 0), (0, 1)]
    return lines


def invariant_lines(rep: IntegralRep) -> list[tuple[int, int]]:
    """Lines preserved by every element of a 2-dimensional representation."""
    if rep.dim != 2:
        raise ValueError("invariant lines are only computed in dimension 2")
    non_central = [m for m in rep.elements if m not in (IDENTITY, NEG_IDENTITY)]
    if not non_central:
        return [(1, 0), (0, 1)]
    candidates = _eigenlines(non_central[0])
    out = []
    for v in candidates:
        if all(mat_vec(m, v) in (v, neg_vec(v)) for m in rep.elements):
            out.append(_primitive(v))
    return sorted(set(out))


def decompose_profile(rep: IntegralRep) -> DecompositionProfile:
    """Split the representation over Q into trivial and nontrivial summands.

    a is the fixed dimension.  A 1-dimensional complement is a sign character.
    A 2-dimensional complement splits into two characters exactly when a
    common rational eigenvector exists, and is rationally simple otherwise.
    """
    if rep.dim > 2:
        raise ValueError("representations of dimension > 2 are unsupported")
    a, basis = fixed_space(rep)
    d = rep.dim - a
    trivial = tuple(Summand("trivial", v if rep.dim == 2 else None) for v in basis[:a])
    if d == 0:
        return DecompositionProfile(a, 0, trivial)
    if d == 1:
        if rep.dim == 1:
            return DecompositionProfile(a, 1, trivial + (Summand("sign character"),))
        line = next(
            v for v in invariant_lines(rep) if a == 0 or v not in basis
        )
        return DecompositionProfile(a, 1, trivial + (Summand("sign character", line),))
    lines = invariant_lines(rep)
    if len(lines) >= 2:
        return DecompositionProfile(
            0, 2, (Summand("sign character", lines[0]), Summand("sign character", lines[1]))
        )
    if lines:
        raise AssertionError("semisimplicity forbids exactly one invariant line")
    return DecompositionProfile(0, 1, (Summand("2-dim simple"),))


def block_dimension(profile: DecompositionProfile) -> tuple[int, int]:
    """The pair (a, b); the block dimension is their sum."""
    return (profile.a, profile.b)
