"""Exact arithmetic in finite fields GF(p^e).

Elements are represented by coefficient vectors over GF(p) in the polynomial
basis {1, x, ..., x^(e-1)} modulo a monic irreducible polynomial, and encoded
as integers sum(c_i * p^i) when stored compactly.  All constructions are
deterministic: the default modulus is the lexicographically smallest monic
irreducible (coefficient vectors read as base-p integers, ascending), and
primitive elements are found by an upward scan over encodings.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .errors import (
    BaseNotSubfield,
    DegreeMismatch,
    FactorizationNeeded,
    NoFactorizationMatch,
    NotPrime,
    NotPrimePower,
    ReduciblePolynomial,
)

DEFAULT_FACTOR_BUDGET = 2 ** 40

# Threshold on q below which full add/mul lookup tables are built for
# extension fields.  Larger fields fall back to per-operation polynomial
# arithmetic (still exact, just slower).
_TABLE_LIMIT = 256

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test (trial division + Miller-Rabin)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(m: int, budget: int = DEFAULT_FACTOR_BUDGET) -> list[int]:
    """Prime factors of m (with multiplicity) by trial division.

    Raises FactorizationNeeded when m exceeds the budget; callers holding an
    externally known factorization should pass it through instead.
    """
    if m > budget:
        raise FactorizationNeeded(
            f"{m} exceeds the trial-division budget {budget}; supply the factorization"
        )
    factors = []
    d = 2
    while d * d <= m:
        while m % d == 0:
            factors.append(d)
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        factors.append(m)
    return factors


# ---------------------------------------------------------------------------
# Polynomial arithmetic over GF(p): tuples of coefficients, low degree first.
# ---------------------------------------------------------------------------

def _poly_trim(c: Sequence[int]) -> tuple[int, ...]:
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> tuple[int, ...]:
    # m must be monic
    r = list(a)
    dm = len(m) - 1
    while len(_poly_trim(r)) - 1 >= dm:
        r = list(_poly_trim(r))
        shift = len(r) - 1 - dm
        lead = r[-1]
        for i, mi in enumerate(m):
            r[shift + i] = (r[shift + i] - lead * mi) % p
    return _poly_trim(r)


def _poly_eval(f: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def _monic_polys(degree: int, p: int) -> Iterable[tuple[int, ...]]:
    """All monic polynomials of the given degree, lowest coefficients first."""
    for lower in itertools.product(range(p), repeat=degree):
        yield lower + (1,)


def _is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Irreducibility of a monic polynomial over GF(p).

    Degree-1 polynomials are irreducible.  Otherwise check for roots in
    GF(p), then trial-divide by every monic polynomial of degree up to
    deg/2.  Exact and adequate at desk scale.
    """
    e = len(modulus) - 1
    if e <= 1:
        return e == 1
    for x in range(p):
        if _poly_eval(modulus, x, p) == 0:
            return False
    for d in range(2, e // 2 + 1):
        for g in _monic_polys(d, p):
            if not _poly_mod(modulus, g, p):
                return False
    return True


# ---------------------------------------------------------------------------
# Field specification and element arithmetic
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """GF(p^e) presented as GF(p)[x] modulo a monic irreducible polynomial.

    modulus is the coefficient tuple (c0, ..., ce) with ce == 1.  Integer
    encodings of elements are sum(c_i * p^i) over the coefficient vector.
    """

    p: int
    e: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        if self.e < 1:
            raise DegreeMismatch("extension degree must be >= 1")
        if len(self.modulus) != self.e + 1 or self.modulus[-1] != 1:
            raise DegreeMismatch(
                f"modulus must be monic of degree {self.e}, got {self.modulus}"
            )
        if any(not (0 <= c < self.p) for c in self.modulus):
            raise DegreeMismatch("modulus coefficients must lie in [0, p)")
        if not _is_irreducible(self.modulus, self.p):
            raise ReduciblePolynomial(f"{self.modulus} is reducible over GF({self.p})")

    @property
    def q(self) -> int:
        return self.p ** self.e

    # -- encoding ------------------------------------------------------------

    def encode(self, coeffs: Sequence[int]) -> int:
        value = 0
        for c in reversed(coeffs):
            value = value * self.p + c
        return value

    def decode(self, value: int) -> tuple[int, ...]:
        coeffs = []
        for _ in range(self.e):
            value, c = divmod(value, self.p)
            coeffs.append(c)
        return tuple(coeffs)

    # -- arithmetic on integer encodings --------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        tables = _op_tables(self)
        if tables is not None:
            return tables[0][a * self.q + b]
        return self.encode([(x + y) % self.p for x, y in zip(self.decode(a), self.decode(b))])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        return self.encode([(-c) % self.p for c in self.decode(a)])

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        tables = _op_tables(self)
        if tables is not None:
            return tables[1][a * self.q + b]
        return self._mul_raw(a, b)

    def _mul_raw(self, a: int, b: int) -> int:
        prod = _poly_mul(self.decode(a), self.decode(b), self.p)
        red = _poly_mod(prod, self.modulus, self.p)
        return self.encode(red + (0,) * (self.e - len(red)))

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv(a), -k)
        result, base = 1, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    # -- element constructors --------------------------------------------------

    def element(self, value) -> "FieldElement":
        """Build an element from an integer encoding or a coefficient sequence."""
        if isinstance(value, int):
            if not 0 <= value < self.q:
                raise ValueError(f"encoding {value} out of range for GF({self.q})")
            return FieldElement(self, self.decode(value))
        coeffs = tuple(c % self.p for c in value)
        if len(coeffs) != self.e:
            raise DegreeMismatch(f"expected {self.e} coefficients, got {len(coeffs)}")
        return FieldElement(self, coeffs)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.e)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, (1,) + (0,) * (self.e - 1))

    def elements(self) -> Iterable["FieldElement"]:
        for v in range(self.q):
            yield self.element(v)

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    def __repr__(self) -> str:
        return f"FieldSpec(GF({self.p}^{self.e}))" if self.e > 1 else f"FieldSpec(GF({self.p}))"


@lru_cache(maxsize=None)
def _op_tables(spec: FieldSpec):
    """Flat add/mul lookup tables for small extension fields, else None."""
    q = spec.q
    if spec.e == 1 or q > _TABLE_LIMIT:
        return None
    add = [0] * (q * q)
    mul = [0] * (q * q)
    coeffs = [spec.decode(v) for v in range(q)]
    for a in range(q):
        ca = coeffs[a]
        for b in range(a, q):
            cb = coeffs[b]
            s = spec.encode([(x + y) % spec.p for x, y in zip(ca, cb)])
            m = spec._mul_raw(a, b)
            add[a * q + b] = add[b * q + a] = s
            mul[a * q + b] = mul[b * q + a] = m
    return tuple(add), tuple(mul)


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(p^e) in polynomial-basis coordinates."""

    spec: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.spec.e:
            raise DegreeMismatch("coefficient vector length must equal the extension degree")
        if any(not (0 <= c < self.spec.p) for c in self.coeffs):
            raise ValueError("coefficients must lie in [0, p)")

    @property
    def encoding(self) -> int:
        return self.spec.encode(self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        p = self.spec.p
        return FieldElement(self.spec, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        p = self.spec.p
        return FieldElement(self.spec, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "FieldElement":
        p = self.spec.p
        return FieldElement(self.spec, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return self.spec.element(self.spec.mul(self.encoding, other.encoding))

    def __pow__(self, k: int) -> "FieldElement":
        return self.spec.element(self.spec.pow(self.encoding, k))

    def inverse(self) -> "FieldElement":
        return self.spec.element(self.spec.inv(self.encoding))

    def _check(self, other: "FieldElement") -> None:
        if self.spec != other.spec:
            raise BaseNotSubfield("elements belong to different fields")

    def __repr__(self) -> str:
        return f"FieldElement({self.encoding} in GF({self.spec.q}))"


def multiplicative_order(elem: FieldElement, factors: Optional[Sequence[int]] = None) -> int:
    """Exact multiplicative order of a nonzero element.

    factors, when given, must be the prime factorization of q - 1.
    """
    if elem.is_zero():
        raise ZeroDivisionError("zero has no multiplicative order")
    spec = elem.spec
    m = spec.q - 1
    if factors is None:
        factors = factorize(m)
    order = m
    a = elem.encoding
    for r in sorted(set(factors)):
        while order % r == 0 and spec.pow(a, order // r) == 1:
            order //= r
    return order


# ---------------------------------------------------------------------------
# Field construction
# ---------------------------------------------------------------------------

def make_field(p: int, e: int, modulus: Optional[Sequence[int]] = None) -> FieldSpec:
    """Construct GF(p^e), validating the modulus or finding the canonical one.

    The canonical modulus is the lexicographically smallest monic irreducible
    of degree e over GF(p), where coefficient vectors (c0..c_{e-1}) are
    compared as base-p integers.  The search is exhaustive and deterministic.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise DegreeMismatch("extension degree must be >= 1")
    if modulus is not None:
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != e + 1 or mod[-1] != 1:
            raise DegreeMismatch(f"modulus must be monic of degree {e}")
        return FieldSpec(p, e, mod)
    return FieldSpec(p, e, _canonical_modulus(p, e))


@lru_cache(maxsize=None)
def _canonical_modulus(p: int, e: int) -> tuple[int, ...]:
    for value in range(p ** e):
        lower = []
        v = value
        for _ in range(e):
            v, c = divmod(v, p)
            lower.append(c)
        candidate = tuple(lower) + (1,)
        if _is_irreducible(candidate, p):
            return candidate
    raise ReduciblePolynomial(f"no irreducible of degree {e} over GF({p})")  # unreachable


def field_from_order(q: int) -> FieldSpec:
    """GF(q) with the canonical modulus, for q a prime power."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    p = 2
    while p * p <= q and q % p != 0:
        p += 1
    if q % p != 0:
        p = q  # q itself prime
    e = 0
    m = q
    while m % p == 0:
        m //= p
        e += 1
    if m != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    return make_field(p, e)


def find_primitive_element(
    spec: FieldSpec,
    factorization: Optional[Sequence[int]] = None,
    budget: int = DEFAULT_FACTOR_BUDGET,
) -> FieldElement:
    """The least element (by integer encoding) of multiplicative order q - 1.

    The order is certified by checking a^((q-1)/r) != 1 for every prime
    factor r of q - 1.  When q - 1 exceeds the trial-division budget the
    caller must supply the factorization.
    """
    m = spec.q - 1
    if factorization is not None:
        supplied = [int(f) for f in factorization]
        prod = 1
        for f in supplied:
            prod *= f
        if prod != m:
            raise NoFactorizationMatch(f"supplied factors multiply to {prod}, not {m}")
        for f in supplied:
            if not is_prime(f):
                raise NoFactorizationMatch(f"supplied factor {f} is not prime")
        primes = sorted(set(supplied))
    else:
        if m > budget:
            raise FactorizationNeeded(
                f"q-1 = {m} exceeds the factoring budget; supply its prime factors"
            )
        primes = sorted(set(factorize(m, budget)))
    for enc in range(1, spec.q):
        if spec.pow(enc, m) != 1:
            continue
        if all(spec.pow(enc, m // r) != 1 for r in primes):
            return spec.element(enc)
    raise ReduciblePolynomial("no primitive element found; modulus is not irreducible")


# ---------------------------------------------------------------------------
# Subfield embeddings: GF(q) inside GF(q^n), with a fixed GF(q)-basis
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubfieldEmbedding:
    """GF(q) embedded in GF(q^n) = GF(p^(e*n)) with a fixed GF(q)-basis.

    The big field is a single extension of the prime field; the copy of
    GF(q) inside it is {0} plus the subgroup of order q-1 generated by
    gamma^((q^n-1)/(q-1)) for the primitive element gamma.  The basis is
    chosen greedily from the powers of gamma (the first n powers whenever
    they are GF(q)-independent, which holds for gamma primitive).
    """

    base: FieldSpec
    big: FieldSpec
    degree: int
    gamma: FieldElement
    base_root: int                       # encoding of the image of the base generator
    basis: tuple[int, ...]               # encodings of the GF(q)-basis of the big field
    _embed_table: tuple[int, ...]        # base encoding -> big encoding
    _lift_table: dict                    # big encoding (of embedded elems) -> base encoding
    _solve_rows: tuple[tuple[int, ...], ...]  # inverse coordinate matrix over GF(p)

    def embed(self, x: FieldElement) -> FieldElement:
        if x.spec != self.base:
            raise BaseNotSubfield("element does not belong to the base field")
        return self.big.element(self._embed_table[x.encoding])

    def coordinates(self, z: FieldElement) -> tuple[FieldElement, ...]:
        """Coordinates of a big-field element in the fixed GF(q)-basis."""
        if z.spec != self.big:
            raise BaseNotSubfield("element does not belong to the extension field")
        p, e, n = self.base.p, self.base.e, self.degree
        c = z.coeffs
        sol = [sum(row[i] * c[i] for i in range(e * n)) % p for row in self._solve_rows]
        return tuple(
            FieldElement(self.base, tuple(sol[j * e + i] for i in range(e)))
            for j in range(n)
        )

    def subfield_encodings(self) -> frozenset[int]:
        return frozenset(self._embed_table)


def subfield_coordinates(element: FieldElement, embedding: SubfieldEmbedding):
    """Coordinate vector of an extension-field element over the base field."""
    return embedding.coordinates(element)


def subfield_embedding(
    base: FieldSpec,
    degree: int,
    big: Optional[FieldSpec] = None,
    factorization: Optional[Sequence[int]] = None,
    budget: int = DEFAULT_FACTOR_BUDGET,
) -> SubfieldEmbedding:
    """Build GF(q^degree) over GF(q) with an explicit embedding and basis."""
    if degree < 1:
        raise BaseNotSubfield("extension degree must be >= 1")
    if big is None:
        big = make_field(base.p, base.e * degree)
    else:
        if big.p != base.p or big.e != base.e * degree:
            raise BaseNotSubfield(
                f"GF({base.p}^{base.e}) does not embed in GF({big.p}^{big.e}) with degree {degree}"
            )
    q, big_q = base.q, big.q
    gamma = find_primitive_element(big, factorization=factorization, budget=budget)

    # Embedded copy of GF(q): zero plus the unique subgroup of order q - 1.
    sub_gen = big.pow(gamma.encoding, (big_q - 1) // (q - 1))
    subfield = {0}
    x = 1
    for _ in range(q - 1):
        subfield.add(x)
        x = big.mul(x, sub_gen)
    if len(subfield) != q:
        raise BaseNotSubfield("embedded subfield has the wrong order")  # unreachable

    # Image of the base field's polynomial generator: the least root of the
    # base modulus inside the embedded subfield.
    root = None
    for cand in sorted(subfield):
        acc = 0
        for coef in reversed(base.modulus):
            acc = big.add(big.mul(acc, cand), coef % big.p)
        if acc == 0:
            root = cand
            break
    if root is None:
        raise BaseNotSubfield("base modulus has no root in the extension")  # unreachable

    root_powers = [1]
    for _ in range(base.e - 1):
        root_powers.append(big.mul(root_powers[-1], root))
    embed_table = []
    for v in range(q):
        coeffs = base.decode(v)
        acc = 0
        for c, rp in zip(coeffs, root_powers):
            term = rp
            acc_c = 0
            for _ in range(c):
                acc_c = big.add(acc_c, term)
            acc = big.add(acc, acc_c)
        embed_table.append(acc)
    lift_table = {enc: v for v, enc in enumerate(embed_table)}

    # Greedy GF(q)-basis from the powers of gamma: a candidate is accepted
    # when its e GF(p)-vectors root^i * candidate extend the GF(p)-span by e.
    p, e, n = base.p, base.e, degree
    dim_total = e * n
    basis: list[int] = []
    span_rows: list[tuple[int, ...]] = []  # row-echelon rows over GF(p)

    def reduce_vector(vec):
        v = list(vec)
        for row in span_rows:
            lead = next(i for i, c in enumerate(row) if c)
            if v[lead]:
                f = v[lead] * pow(row[lead], p - 2, p) % p
                v = [(a - f * b) % p for a, b in zip(v, row)]
        return v

    power = 1  # gamma^0
    while len(basis) < n:
        new_rows = []
        ok = True
        for rp in root_powers:
            vec = big.decode(big.mul(rp, power))
            red = reduce_vector(vec)
            for prior in new_rows:
                lead = next(i for i, c in enumerate(prior) if c)
                if red[lead]:
                    f = red[lead] * pow(prior[lead], p - 2, p) % p
                    red = [(a - f * b) % p for a, b in zip(red, prior)]
            if all(c == 0 for c in red):
                ok = False
                break
            new_rows.append(red)
        if ok:
            basis.append(power)
            span_rows.extend(tuple(r) for r in new_rows)
        power = big.mul(power, gamma.encoding)

    # Coordinate solve: invert the GF(p)-matrix whose columns are the
    # vectors root^i * basis_j, ordered j-major.
    cols = []
    for b in basis:
        for rp in root_powers:
            cols.append(big.decode(big.mul(rp, b)))
    inverse = _invert_prime_matrix([[cols[j][i] for j in range(dim_total)] for i in range(dim_total)], p)

    return SubfieldEmbedding(
        base=base,
        big=big,
        degree=degree,
        gamma=gamma,
        base_root=root,
        basis=tuple(basis),
        _embed_table=tuple(embed_table),
        _lift_table=lift_table,
        _solve_rows=tuple(tuple(r) for r in inverse),
    )


def _invert_prime_matrix(mat: list[list[int]], p: int) -> list[list[int]]:
    """Gauss-Jordan inverse of a square matrix over GF(p)."""
    n = len(mat)
    aug = [list(mat[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] % p), None)
        if pivot is None:
            raise BaseNotSubfield("coordinate matrix is singular")  # unreachable
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = pow(aug[col][col], p - 2, p)
        aug[col] = [v * inv % p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(a - f * b) % p for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]
