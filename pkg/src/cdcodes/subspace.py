"""Linear algebra over GF(q): canonical subspaces and the dimension distance.

Subspaces are stored in reduced row echelon form, which is unique per row
space, so equality, hashing, and ordering are all structural.  Field
elements inside basis matrices are integer-encoded (sum of c_i * p^i over
the polynomial-basis coefficients).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .bounds import gaussian_binomial
from .errors import (
    AmbientMismatch,
    BudgetExceeded,
    ElementNotInField,
    LengthMismatch,
    NotASubspaceOf,
)
from .field import FieldSpec

DEFAULT_ENUMERATION_BUDGET = 10 ** 6


def _rref(spec: FieldSpec, n: int, rows: Sequence[Sequence[int]]):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    pr = 0
    for col in range(n):
        pivot_row = None
        for r in range(pr, len(mat)):
            if mat[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        mat[pr], mat[pivot_row] = mat[pivot_row], mat[pr]
        inv = spec.inv(mat[pr][col])
        if inv != 1:
            mat[pr] = [spec.mul(inv, x) for x in mat[pr]]
        for r in range(len(mat)):
            if r != pr and mat[r][col]:
                f = mat[r][col]
                mat[r] = [spec.sub(x, spec.mul(f, y)) for x, y in zip(mat[r], mat[pr])]
        pivots.append(col)
        pr += 1
        if pr == len(mat):
            break
    return tuple(tuple(r) for r in mat[:pr]), tuple(pivots)


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(q)^n, canonically represented by its RREF basis."""

    spec: FieldSpec
    n: int
    basis: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        q = self.spec.q
        for row in self.basis:
            if len(row) != self.n:
                raise LengthMismatch("basis row length must equal the ambient dimension")
            if any(not (0 <= v < q) for v in row):
                raise ElementNotInField("basis entries must be valid element encodings")
        rref_rows, _ = _rref(self.spec, self.n, self.basis)
        if rref_rows != self.basis:
            raise ValueError("basis is not in reduced row echelon form")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, v in enumerate(row) if v) for row in self.basis)

    def canonical_key(self) -> tuple:
        """Total order key: dimension, pivot columns, free-entry counter.

        The counter reads the free entries row-major with the first-read
        position as the least significant base-q digit; it matches the
        enumeration order of enumerate_subspaces.
        """
        pivots = self.pivots
        pivot_set = set(pivots)
        k = 0
        weight = 1
        for i, row in enumerate(self.basis):
            for j in range(pivots[i] + 1, self.n):
                if j not in pivot_set:
                    k += row[j] * weight
                    weight *= self.spec.q
        return (self.dim, pivots, k)

    def __lt__(self, other: "Subspace") -> bool:
        return self.canonical_key() < other.canonical_key()

    def contains_vector(self, vec: Sequence[int]) -> bool:
        return all(v == 0 for v in _reduce_against(self.spec, list(vec), self.basis, self.pivots))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, n={self.n}, q={self.spec.q})"


def _reduce_against(spec, vec, rows, pivots):
    for row, pc in zip(rows, pivots):
        if vec[pc]:
            f = vec[pc]
            vec = [spec.sub(x, spec.mul(f, y)) for x, y in zip(vec, row)]
    return vec


def subspace_from_rows(spec: FieldSpec, n: int, rows: Iterable[Sequence[int]]) -> Subspace:
    """The row space of the given vectors, in canonical form."""
    checked = []
    q = spec.q
    for row in rows:
        row = tuple(int(v) for v in row)
        if len(row) != n:
            raise LengthMismatch(f"row of length {len(row)} in ambient dimension {n}")
        if any(not (0 <= v < q) for v in row):
            raise ElementNotInField(f"entries must be encodings in [0, {q})")
        checked.append(row)
    rref_rows, _ = _rref(spec, n, checked)
    return Subspace(spec, n, rref_rows)


def zero_subspace(spec: FieldSpec, n: int) -> Subspace:
    return Subspace(spec, n, ())


def full_space(spec: FieldSpec, n: int) -> Subspace:
    rows = tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))
    return Subspace(spec, n, rows)


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.spec != b.spec or a.n != b.n:
        raise AmbientMismatch("subspaces live in different ambient spaces")


def sum_dim(a: Subspace, b: Subspace) -> int:
    """dim(A + B): rank of the stacked bases."""
    _check_ambient(a, b)
    rows, _ = _rref(a.spec, a.n, a.basis + b.basis)
    return len(rows)


def intersect_dim(a: Subspace, b: Subspace) -> int:
    """dim(A intersect B) via the modular law."""
    return a.dim + b.dim - sum_dim(a, b)


def dimension_distance(a: Subspace, b: Subspace) -> int:
    """d(A, B) = dim(A+B) - dim(A/\\B) = dim A + dim B - 2 dim(A/\\B)."""
    _check_ambient(a, b)
    s = sum_dim(a, b)
    i = a.dim + b.dim - s
    d1 = s - i
    d2 = a.dim + b.dim - 2 * i
    assert d1 == d2
    return d1


def intersection(a: Subspace, b: Subspace) -> Subspace:
    """A intersect B, computed by the Zassenhaus double-block elimination.

    Independent of orthogonal complements, so it can serve as an oracle for
    identities that involve them.
    """
    _check_ambient(a, b)
    spec, n = a.spec, a.n
    stacked = [list(r) + list(r) for r in a.basis] + [list(r) + [0] * n for r in b.basis]
    rows, _ = _rref(spec, 2 * n, stacked)
    inter_rows = [r[n:] for r in rows if all(v == 0 for v in r[:n])]
    return subspace_from_rows(spec, n, inter_rows)


def orthogonal_complement(a: Subspace) -> Subspace:
    """{v : v . x = 0 for all x in A} under the standard dot product."""
    spec, n = a.spec, a.n
    pivot_set = set(a.pivots)
    free_cols = [j for j in range(n) if j not in pivot_set]
    kernel_rows = []
    for f in free_cols:
        vec = [0] * n
        vec[f] = 1
        for i, pc in enumerate(a.pivots):
            vec[pc] = spec.neg(a.basis[i][f])
        kernel_rows.append(vec)
    return subspace_from_rows(spec, n, kernel_rows)


def relative_orthogonal_complement(v2: Subspace, v1: Subspace) -> Subspace:
    """{a in V1 : a . b = 0 for all b in V2}, requiring V2 <= V1.

    The dimension can exceed dim V1 - dim V2 when the form degenerates on
    V1; the result reports whatever dimension it actually has.
    """
    _check_ambient(v2, v1)
    if intersect_dim(v2, v1) != v2.dim:
        raise NotASubspaceOf("first argument must be contained in the second")
    spec, n = v1.spec, v1.n
    if v2.dim == 0:
        return v1
    # Constraint matrix over the coordinates of V1's basis.
    m = [
        [_dot(spec, u, w) for u in v1.basis]
        for w in v2.basis
    ]
    coeff_kernel, _ = _kernel_rows(spec, v1.dim, m)
    ambient_rows = []
    for coeffs in coeff_kernel:
        vec = [0] * n
        for c, row in zip(coeffs, v1.basis):
            if c:
                vec = [spec.add(x, spec.mul(c, y)) for x, y in zip(vec, row)]
        ambient_rows.append(vec)
    return subspace_from_rows(spec, n, ambient_rows)


def _dot(spec: FieldSpec, u: Sequence[int], w: Sequence[int]) -> int:
    acc = 0
    for x, y in zip(u, w):
        if x and y:
            acc = spec.add(acc, spec.mul(x, y))
    return acc


def _kernel_rows(spec: FieldSpec, width: int, mat: Sequence[Sequence[int]]):
    rows, pivots = _rref(spec, width, mat)
    pivot_set = set(pivots)
    kernel = []
    for f in (j for j in range(width) if j not in pivot_set):
        vec = [0] * width
        vec[f] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = spec.neg(rows[i][f])
        kernel.append(vec)
    return kernel, pivots


def contains(outer: Subspace, inner: Subspace) -> bool:
    """Whether every vector of inner lies in outer."""
    _check_ambient(outer, inner)
    pivots = outer.pivots
    return all(
        all(v == 0 for v in _reduce_against(outer.spec, list(row), outer.basis, pivots))
        for row in inner.basis
    )


def enumerate_subspaces(
    spec: FieldSpec,
    n: int,
    l: int,
    budget: Optional[int] = DEFAULT_ENUMERATION_BUDGET,
) -> Iterator[Subspace]:
    """All l-dimensional subspaces of GF(q)^n, each exactly once.

    Walks pivot-column patterns in lexicographic order; for each pattern the
    free entries run through all fillings as a base-q counter whose lowest
    digit is the first free position in row-major reading order.  The total
    number of subspaces equals the Gaussian binomial [n choose l]_q.
    """
    q = spec.q
    total = gaussian_binomial(n, l, q)
    if budget is not None and total > budget:
        raise BudgetExceeded(
            f"[{n} choose {l}]_{q} = {total} exceeds the enumeration budget {budget}"
        )
    if l == 0:
        yield zero_subspace(spec, n)
        return
    for pivots in itertools.combinations(range(n), l):
        pivot_set = set(pivots)
        free_positions = [
            (i, j)
            for i in range(l)
            for j in range(pivots[i] + 1, n)
            if j not in pivot_set
        ]
        template = [[0] * n for _ in range(l)]
        for i, pc in enumerate(pivots):
            template[i][pc] = 1
        for k in range(q ** len(free_positions)):
            rows = [list(r) for r in template]
            v = k
            for (i, j) in free_positions:
                v, digit = divmod(v, q)
                rows[i][j] = digit
            yield Subspace(spec, n, tuple(tuple(r) for r in rows))


def encode_vector(spec: FieldSpec, vec: Sequence[int]) -> int:
    """Read a coordinate vector as a base-q integer, first coordinate lowest."""
    value = 0
    for v in reversed(vec):
        value = value * spec.q + v
    return value


def decode_vector(spec: FieldSpec, n: int, value: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        value, v = divmod(value, spec.q)
        out.append(v)
    return tuple(out)


def vector_encodings(s: Subspace) -> frozenset[int]:
    """Encodings of all nonzero vectors of the subspace."""
    spec, n = s.spec, s.n
    q = spec.q
    points = set()
    for coeffs in itertools.product(range(q), repeat=s.dim):
        vec = [0] * n
        for c, row in zip(coeffs, s.basis):
            if c:
                vec = [spec.add(x, spec.mul(c, y)) for x, y in zip(vec, row)]
        enc = encode_vector(spec, vec)
        if enc:
            points.add(enc)
    return frozenset(points)
