"""Exact upper bounds for constant dimension codes.

All arithmetic is exact: Python integers for bound values, Fraction for the
rationals behind the Wang-Xing-Safavi-Naini bound and the bound-ratio tables.
Decimal rendering happens only at the presentation edge.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import RangeError


@dataclass(frozen=True)
class CodeParams:
    """Parameters (n, 2*delta, l)_q of a constant dimension code.

    q only needs to be an integer >= 2 for bound evaluation; primality
    structure is validated separately when an actual field is required.
    """

    q: int
    n: int
    delta: int
    l: int

    def __post_init__(self):
        if self.q < 2:
            raise RangeError("q must be >= 2")
        if not (1 <= self.delta <= self.l <= self.n):
            raise RangeError(
                f"need 1 <= delta <= l <= n, got delta={self.delta}, l={self.l}, n={self.n}"
            )

    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n, "delta": self.delta, "l": self.l}


def gaussian_binomial(n: int, m: int, q: int) -> int:
    """Number of m-dimensional subspaces of an n-dimensional space over GF(q).

    Computed as the exact product prod_{i<m} (q^(n-i)-1)/(q^(m-i)-1) with the
    division asserted exact.
    """
    if q < 2:
        raise RangeError("q must be >= 2")
    if not 0 <= m <= n:
        raise RangeError(f"need 0 <= m <= n, got m={m}, n={n}")
    num = 1
    den = 1
    for i in range(m):
        num *= q ** (n - i) - 1
        den *= q ** (m - i) - 1
    value, rem = divmod(num, den)
    assert rem == 0, "Gaussian binomial product must divide exactly"
    return value


def singleton_bound(params: CodeParams) -> int:
    """[n-delta+1 choose l-delta+1]_q."""
    return gaussian_binomial(params.n - params.delta + 1, params.l - params.delta + 1, params.q)


def wxs_bound(params: CodeParams) -> tuple[int, Fraction]:
    """The Wang-Xing-Safavi-Naini bound: floor and the exact rational.

    [n choose l-delta+1]_q / [l choose l-delta+1]_q; the bound itself is the
    rational, but code sizes are integers so the floor is what comparisons
    use.
    """
    m = params.l - params.delta + 1
    exact = Fraction(gaussian_binomial(params.n, m, params.q),
                     gaussian_binomial(params.l, m, params.q))
    return exact.numerator // exact.denominator, exact


def johnson_i_bound(params: CodeParams) -> Optional[int]:
    """Johnson type bound I, or None when its condition fails.

    Applicable iff (q^l-1)^2 > (q^n-1)(q^(l-delta)-1); then the bound is
    floor((q^l-q^(l-delta))(q^n-1) / ((q^l-1)^2 - (q^n-1)(q^(l-delta)-1))).
    """
    q, n, l, d = params.q, params.n, params.l, params.delta
    gap = (q ** l - 1) ** 2 - (q ** n - 1) * (q ** (l - d) - 1)
    if gap <= 0:
        return None
    return (q ** l - q ** (l - d)) * (q ** n - 1) // gap


def johnson_ii_step(params: CodeParams, inner: int) -> int:
    """One recursion step: floor((q^n-1) * inner / (q^l-1)).

    inner must be an upper bound for the (n-1, 2*delta, l-1) problem.
    """
    q = params.q
    return (q ** params.n - 1) * inner // (q ** params.l - 1)


def johnson_ii_bound(params: CodeParams) -> int:
    """Johnson type bound II: the nested-floor chain, evaluated inside out.

    floor((q^n-1)/(q^l-1) * floor((q^(n-1)-1)/(q^(l-1)-1) * ...
          floor((q^(n-l+delta)-1)/(q^delta-1)) ...))
    """
    q, n, l, d = params.q, params.n, params.l, params.delta
    value = (q ** (n - l + d) - 1) // (q ** d - 1)
    for j in range(d + 1, l + 1):
        value = (q ** (n - l + j) - 1) * value // (q ** j - 1)
    return value


_BOUND_ORDER = ("singleton", "wxs", "johnson_i", "johnson_ii")


@dataclass(frozen=True)
class OrientationBounds:
    """All bounds evaluated at one codeword dimension."""

    l: int
    singleton: int
    wxs_floor: int
    wxs_exact: Fraction
    johnson_i: Optional[int]
    johnson_ii: int

    def values(self) -> dict:
        return {
            "singleton": self.singleton,
            "wxs": self.wxs_floor,
            "johnson_i": self.johnson_i,
            "johnson_ii": self.johnson_ii,
        }

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "singleton": str(self.singleton),
            "wxs": str(self.wxs_floor),
            "wxs_exact": f"{self.wxs_exact.numerator}/{self.wxs_exact.denominator}",
            "johnson_i": None if self.johnson_i is None else str(self.johnson_i),
            "johnson_ii": str(self.johnson_ii),
        }


@dataclass(frozen=True)
class BoundReport:
    """Best upper bound over both the l and n-l parameter orientations."""

    params: CodeParams
    orientations: tuple[OrientationBounds, ...]
    best: int
    best_bound: str
    best_l: int
    dual_params_used: bool

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "orientations": [o.to_json() for o in self.orientations],
            "best": str(self.best),
            "best_bound": self.best_bound,
            "best_l": self.best_l,
            "dual_params_used": self.dual_params_used,
        }


def _orientation(q: int, n: int, delta: int, l: int) -> OrientationBounds:
    p = CodeParams(q, n, delta, l)
    floor, exact = wxs_bound(p)
    return OrientationBounds(
        l=l,
        singleton=singleton_bound(p),
        wxs_floor=floor,
        wxs_exact=exact,
        johnson_i=johnson_i_bound(p),
        johnson_ii=johnson_ii_bound(p),
    )


def bound_report(params: CodeParams) -> BoundReport:
    """Evaluate every bound at l and, when valid, at n-l; pick the minimum.

    The two orientations bound the same quantity because complementation
    maps codes of dimension l to codes of dimension n-l with the same size
    and minimum distance.  Ties keep the first value in scan order
    (primary orientation first; singleton, wxs, johnson_i, johnson_ii).
    """
    q, n, delta, l = params.q, params.n, params.delta, params.l
    orientations = [_orientation(q, n, delta, l)]
    dual_l = n - l
    if dual_l != l and delta <= dual_l:
        orientations.append(_orientation(q, n, delta, dual_l))

    best = None
    best_bound = ""
    best_l = l
    for o in orientations:
        for name in _BOUND_ORDER:
            value = o.values()[name]
            if value is None:
                continue
            if best is None or value < best:
                best, best_bound, best_l = value, name, o.l
    return BoundReport(
        params=params,
        orientations=tuple(orientations),
        best=best,
        best_bound=best_bound,
        best_l=best_l,
        dual_params_used=(best_l != l),
    )


def decimal_string(value: Fraction, digits: int) -> str:
    """Render an exact rational to fixed decimals, rounding half away from zero."""
    if digits < 0:
        raise RangeError("digits must be >= 0")
    sign = "-" if value < 0 else ""
    num, den = abs(value.numerator), value.denominator
    scaled, rem = divmod(num * 10 ** digits, den)
    if 2 * rem >= den:
        scaled += 1
    if digits == 0:
        return f"{sign}{scaled}"
    whole, frac = divmod(scaled, 10 ** digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def bound_ratio_table(
    n: int, l: int, delta: int, q_list: Sequence[int], precision_digits: int = 2
) -> list[str]:
    """Singleton/WXS bound ratios for each q, as fixed-precision decimals.

    The ratio uses the exact WXS rational (not its floor); it equals 1
    exactly when delta == 1 or n == l.
    """
    out = []
    for q in q_list:
        p = CodeParams(q, n, delta, l)
        _, exact = wxs_bound(p)
        ratio = Fraction(singleton_bound(p)) / exact
        out.append(decimal_string(ratio, precision_digits))
    return out
