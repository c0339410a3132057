"""Constant dimension codes and their binary constant weight images.

A code is a canonically ordered, deduplicated set of equal-dimension
subspaces.  The incidence-vector mappings index coordinates by the nonzero
ambient vectors (derived) or projective points (punctured), both in a fixed
ascending encoding order so that exports are bit-exact.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import (
    AmbientMismatch,
    DimensionMismatch,
    EmptyCode,
    LengthMismatch,
    SingletonCode,
)
from .field import FieldSpec, make_field
from .subspace import (
    Subspace,
    decode_vector,
    dimension_distance,
    orthogonal_complement,
    subspace_from_rows,
    vector_encodings,
)


@dataclass(frozen=True)
class ConstantDimensionCode:
    """An (n, M, 2*delta, l)_q constant dimension code."""

    spec: FieldSpec
    n: int
    l: int
    codewords: tuple[Subspace, ...]
    cached_min_distance: Optional[int] = field(default=None, compare=False, repr=False)
    construction: Optional[dict] = field(default=None, compare=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.codewords)

    def __repr__(self) -> str:
        d = self.cached_min_distance
        return f"ConstantDimensionCode(n={self.n}, M={self.size}, d={d}, l={self.l}, q={self.spec.q})"


def new_code(
    spec: FieldSpec,
    n: int,
    l: int,
    subspaces: Iterable[Subspace],
    construction: Optional[dict] = None,
) -> ConstantDimensionCode:
    """Validate, deduplicate, and canonically order a set of codewords."""
    seen = {}
    for s in subspaces:
        if s.spec != spec or s.n != n:
            raise AmbientMismatch("codeword lives in a different ambient space")
        if s.dim != l:
            raise DimensionMismatch(f"codeword of dimension {s.dim}, expected {l}")
        seen[s.basis] = s
    if not seen:
        raise EmptyCode("a code must contain at least one codeword")
    ordered = tuple(sorted(seen.values(), key=Subspace.canonical_key))
    return ConstantDimensionCode(spec, n, l, ordered, construction=construction)


def min_distance(code: ConstantDimensionCode) -> int:
    """Minimum pairwise dimension distance; always even for equal dimensions."""
    if code.cached_min_distance is not None:
        return code.cached_min_distance
    if code.size < 2:
        raise SingletonCode("minimum distance needs at least two codewords")
    best = None
    words = code.codewords
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            d = dimension_distance(words[i], words[j])
            if best is None or d < best:
                best = d
    assert best % 2 == 0, "distance between equal-dimension subspaces must be even"
    assert 2 <= best <= 2 * code.l
    object.__setattr__(code, "cached_min_distance", best)
    return best


def dual_code(code: ConstantDimensionCode) -> ConstantDimensionCode:
    """The code of orthogonal complements: same size and minimum distance."""
    duals = [orthogonal_complement(x) for x in code.codewords]
    return new_code(code.spec, code.n, code.n - code.l, duals)


@dataclass(frozen=True)
class BinaryConstantWeightCode:
    """A binary code whose rows all share one Hamming weight.

    Rows are stored as integers; bit i is coordinate i.  min_distance is
    None for single-row codes.
    """

    length: int
    size: int
    weight: int
    min_distance: Optional[int]
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.size != len(self.rows):
            raise LengthMismatch("size must match the number of rows")
        mask = (1 << self.length) - 1
        for r in self.rows:
            if r & ~mask:
                raise LengthMismatch("row has bits beyond the stated length")
            if r.bit_count() != self.weight:
                raise ValueError(f"row weight {r.bit_count()} != {self.weight}")
        if self.size >= 2:
            dmin = min(
                (a ^ b).bit_count()
                for i, a in enumerate(self.rows)
                for b in self.rows[i + 1:]
            )
            if dmin != self.min_distance:
                raise ValueError(f"actual minimum distance {dmin} != {self.min_distance}")
        elif self.min_distance is not None:
            raise ValueError("single-row codes have no minimum distance")


def _delta_of(code: ConstantDimensionCode) -> Optional[int]:
    if code.size < 2:
        return None
    return min_distance(code) // 2


def derived_cwc(code: ConstantDimensionCode) -> BinaryConstantWeightCode:
    """Incidence vectors over the q^n - 1 nonzero ambient vectors.

    Coordinate i corresponds to the vector with base-q encoding i + 1.
    Parameters are measured from the rows and cross-checked against the
    closed forms N = q^n - 1, w = q^l - 1, d = 2(q^l - q^(l-delta)).
    """
    q, n, l = code.spec.q, code.n, code.l
    big_n = q ** n - 1
    rows = []
    for x in code.codewords:
        bits = 0
        for enc in vector_encodings(x):
            bits |= 1 << (enc - 1)
        rows.append(bits)
    delta = _delta_of(code)
    dmin = None
    if delta is not None:
        dmin = min(
            (a ^ b).bit_count() for i, a in enumerate(rows) for b in rows[i + 1:]
        )
        assert dmin == 2 * (q ** l - q ** (l - delta))
    cwc = BinaryConstantWeightCode(
        length=big_n,
        size=code.size,
        weight=q ** l - 1,
        min_distance=dmin,
        rows=tuple(rows),
    )
    return cwc


def _projective_points(spec: FieldSpec, n: int) -> list[int]:
    """Encodings of monic representatives (first nonzero coordinate 1), ascending."""
    q = spec.q
    points = []
    for enc in range(1, q ** n):
        vec = decode_vector(spec, n, enc)
        first = next(v for v in vec if v)
        if first == 1:
            points.append(enc)
    return points


def punctured_cwc(code: ConstantDimensionCode) -> BinaryConstantWeightCode:
    """Incidence vectors over projective points.

    Coordinates follow the ascending encoding order of the monic
    representatives of the 1-dimensional subspaces.  The derived code is
    exactly the (q-1)-fold column replication of this one, and that
    correspondence is verified column by column.
    """
    spec, n, l = code.spec, code.n, code.l
    q = spec.q
    points = _projective_points(spec, n)
    index_of = {enc: i for i, enc in enumerate(points)}
    point_sets = [vector_encodings(x) for x in code.codewords]
    rows = []
    for pts in point_sets:
        bits = 0
        for i, enc in enumerate(points):
            if enc in pts:
                bits |= 1 << i
        rows.append(bits)
    delta = _delta_of(code)
    dmin = None
    if delta is not None:
        dmin = min(
            (a ^ b).bit_count() for i, a in enumerate(rows) for b in rows[i + 1:]
        )
        assert dmin == 2 * (q ** l - q ** (l - delta)) // (q - 1)
    cwc = BinaryConstantWeightCode(
        length=len(points),
        size=code.size,
        weight=(q ** l - 1) // (q - 1),
        min_distance=dmin,
        rows=tuple(rows),
    )
    # Columnwise replication check: every nonzero vector's derived column
    # equals the punctured column of its projective point.
    for enc in range(1, q ** n):
        vec = decode_vector(spec, n, enc)
        first = next(v for v in vec if v)
        inv = spec.inv(first)
        monic = tuple(spec.mul(inv, v) for v in vec)
        monic_enc = 0
        for v in reversed(monic):
            monic_enc = monic_enc * q + v
        col = index_of[monic_enc]
        for r, pts in enumerate(point_sets):
            derived_bit = 1 if enc in pts else 0
            punct_bit = (rows[r] >> col) & 1
            assert derived_bit == punct_bit, "derived/punctured column mismatch"
    return cwc


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def code_to_json(code: ConstantDimensionCode) -> dict:
    doc = {
        "p": code.spec.p,
        "e": code.spec.e,
        "modulus": list(code.spec.modulus),
        "n": code.n,
        "l": code.l,
        "blocks": [[list(row) for row in x.basis] for x in code.codewords],
    }
    if code.construction is not None:
        doc["construction"] = code.construction
    return doc


def code_from_json(doc: dict) -> ConstantDimensionCode:
    spec = make_field(int(doc["p"]), int(doc["e"]), doc["modulus"])
    n, l = int(doc["n"]), int(doc["l"])
    words = [subspace_from_rows(spec, n, block) for block in doc["blocks"]]
    return new_code(spec, n, l, words, construction=doc.get("construction"))


def dump_code(code: ConstantDimensionCode) -> str:
    return json.dumps(code_to_json(code), indent=2)


def load_code(text: str) -> ConstantDimensionCode:
    return code_from_json(json.loads(text))


def cwc_to_text(cwc: BinaryConstantWeightCode) -> str:
    d = 0 if cwc.min_distance is None else cwc.min_distance
    lines = [f"{cwc.length} {cwc.size} {cwc.weight} {d}"]
    for r in cwc.rows:
        lines.append("".join("1" if (r >> i) & 1 else "0" for i in range(cwc.length)))
    return "\n".join(lines) + "\n"


def cwc_from_text(text: str) -> BinaryConstantWeightCode:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    n, m, w, d = (int(tok) for tok in lines[0].split())
    rows = []
    for ln in lines[1:]:
        if len(ln) != n:
            raise LengthMismatch(f"row of length {len(ln)}, expected {n}")
        bits = 0
        for i, ch in enumerate(ln):
            if ch == "1":
                bits |= 1 << i
            elif ch != "0":
                raise ValueError(f"invalid character {ch!r} in row")
        rows.append(bits)
    if len(rows) != m:
        raise LengthMismatch(f"{len(rows)} rows, header says {m}")
    return BinaryConstantWeightCode(
        length=n,
        size=m,
        weight=w,
        min_distance=None if m < 2 else d,
        rows=tuple(rows),
    )
