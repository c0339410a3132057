"""Steiner structures: verification, counting, and the spread construction.

A Steiner structure S[t, l, n]_q is a family of l-dimensional subspaces
covering every t-dimensional subspace exactly once.  The only known
nontrivial family, the spreads S[1, l, kl]_q, is built here from cyclotomic
classes: the cosets of the index-e multiplicative subgroup of GF(q^(kl))*
with e = (q^(kl)-1)/(q^l-1), each with zero adjoined, are the blocks.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .bounds import CodeParams, gaussian_binomial, wxs_bound
from .code import ConstantDimensionCode, min_distance, new_code
from .errors import ConstructionVerificationFailed
from .field import FieldSpec, find_primitive_element, subfield_embedding
from .subspace import (
    Subspace,
    enumerate_subspaces,
    intersect_dim,
    subspace_from_rows,
    vector_encodings,
)

DEFAULT_STEINER_BUDGET = 10 ** 6


@dataclass(frozen=True)
class SteinerParams:
    t: int
    l: int
    n: int
    q: int

    def __post_init__(self):
        if not (1 <= self.t <= self.l <= self.n):
            raise ValueError("need 1 <= t <= l <= n")


@dataclass(frozen=True)
class SteinerCheck:
    """Outcome of the exact-cover verification."""

    is_steiner: bool
    witness: Optional[Subspace]       # a t-subspace covered != 1 times, if any
    witness_cover_count: Optional[int]


def construct_spread(
    q_spec: FieldSpec,
    l: int,
    k: int,
    factorization: Optional[Sequence[int]] = None,
) -> ConstantDimensionCode:
    """The spread S[1, l, kl]_q from cyclotomic classes of GF(q^(kl)).

    All postconditions are verified exhaustively at build time: block count
    (q^(kl)-1)/(q^l-1), every block of dimension l, the zeroth block equal
    to the embedded subfield of order q^l, pairwise trivial intersections,
    full coverage of the nonzero vectors, and minimum distance 2l.
    """
    if l < 1:
        raise ValueError("block dimension must be >= 1")
    if k < 2:
        raise ValueError("need k >= 2; k = 1 gives only the trivial single-block structure")
    n = k * l
    q = q_spec.q
    emb = subfield_embedding(q_spec, n, factorization=factorization)
    big = emb.big
    big_q = big.q
    e = (big_q - 1) // (q ** l - 1)
    alpha = emb.gamma

    # <alpha^e>: the subgroup of order q^l - 1.
    gen = big.pow(alpha.encoding, e)
    subgroup = [1]
    for _ in range(q ** l - 2):
        subgroup.append(big.mul(subgroup[-1], gen))
    if len(set(subgroup)) != q ** l - 1:
        raise ConstructionVerificationFailed("subgroup has wrong order")

    # Zeroth block must be the subfield of order q^l: fixed points of x -> x^(q^l).
    for x in subgroup:
        if big.pow(x, q ** l) != x:
            raise ConstructionVerificationFailed("coset 0 is not the subfield of order q^l")

    blocks = []
    seen_points: set[int] = set()
    coset_rep = 1  # alpha^i
    for i in range(e):
        coset = [big.mul(coset_rep, x) for x in subgroup]
        rows = [
            [c.encoding for c in emb.coordinates(big.element(enc))]
            for enc in coset
        ]
        block = subspace_from_rows(q_spec, n, rows)
        if block.dim != l:
            raise ConstructionVerificationFailed(
                f"coset {i} spans dimension {block.dim}, expected {l}"
            )
        pts = vector_encodings(block)
        if seen_points & pts:
            raise ConstructionVerificationFailed(f"coset {i} meets an earlier block")
        seen_points |= pts
        blocks.append(block)
        coset_rep = big.mul(coset_rep, alpha.encoding)

    if len(seen_points) != q ** n - 1:
        raise ConstructionVerificationFailed("blocks do not cover all nonzero vectors")

    meta = {
        "type": "cyclotomic_spread",
        "q": q,
        "l": l,
        "k": k,
        "modulus": list(big.modulus),
        "alpha": alpha.encoding,
    }
    code = new_code(q_spec, n, l, blocks, construction=meta)
    if code.size != e:
        raise ConstructionVerificationFailed("duplicate blocks collapsed; coset count wrong")
    if min_distance(code) != 2 * l:
        raise ConstructionVerificationFailed(
            f"minimum distance {min_distance(code)}, expected {2 * l}"
        )
    return code


def is_steiner_structure(
    code: ConstantDimensionCode,
    t: int,
    budget: int = DEFAULT_STEINER_BUDGET,
) -> SteinerCheck:
    """Exact-cover check: every t-subspace inside exactly one codeword.

    Containment of T in X is tested as intersect_dim(T, X) == t.  On
    failure the witness is the first t-subspace (in enumeration order)
    covered zero or multiple times.
    """
    for tsub in enumerate_subspaces(code.spec, code.n, t, budget=budget):
        cover = 0
        for x in code.codewords:
            if intersect_dim(tsub, x) == t:
                cover += 1
                if cover > 1:
                    break
        if cover != 1:
            return SteinerCheck(False, tsub, cover)
    return SteinerCheck(True, None, None)


def steiner_block_count(t: int, l: int, n: int, q: int) -> Union[int, Fraction]:
    """[n choose t]_q / [l choose t]_q; a non-integer certifies nonexistence."""
    SteinerParams(t, l, n, q)
    value = Fraction(gaussian_binomial(n, t, q), gaussian_binomial(l, t, q))
    if value.denominator == 1:
        return value.numerator
    return value


def steiner_as_code_params(t: int, l: int, n: int, q: int):
    """Code parameters of an S[t, l, n]_q: delta = l - t + 1, plus its size."""
    SteinerParams(t, l, n, q)
    params = CodeParams(q=q, n=n, delta=l - t + 1, l=l)
    return params, steiner_block_count(t, l, n, q)


@dataclass(frozen=True)
class WxsEquivalence:
    """Both sides of the bound-achiever / Steiner-structure equivalence."""

    achieves_wxs: bool
    is_steiner: bool


def check_wxs_achiever_equivalence(
    code: ConstantDimensionCode,
    delta: int,
    budget: int = DEFAULT_STEINER_BUDGET,
) -> WxsEquivalence:
    """Evaluate both predicates independently; they are provably equivalent.

    achieves_wxs compares the code size with the exact rational bound;
    is_steiner runs the exact-cover check at t = l - delta + 1.
    """
    if code.size >= 2 and min_distance(code) < 2 * delta:
        raise ValueError("code minimum distance is below 2*delta")
    params = CodeParams(q=code.spec.q, n=code.n, delta=delta, l=code.l)
    _, exact = wxs_bound(params)
    achieves = Fraction(code.size) == exact
    t = code.l - delta + 1
    steiner = is_steiner_structure(code, t, budget=budget).is_steiner
    return WxsEquivalence(achieves_wxs=achieves, is_steiner=steiner)
