"""Exact point enumeration over GF(q^2) and GF(q^4), and maximality checks.

Enumeration is elementary by design: affine solutions are found by
matching the pure-x part against the pure-y part of the defining
polynomial (the built-in models have no mixed monomials), or by a plain
double loop as a fallback.  Points over x = infinity come from the
curve's declared descriptor, never from a blow-up.

A hard ceiling keeps full censuses at desk scale: enumeration refuses
fields of 2^16 elements or more, so level 2 is available for q <= 8
only.  Counting is slice-parallel over x and deterministic regardless
of partitioning.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .curves import PlaneCurve
from .fields import BinaryField, FieldElement

CENSUS_FIELD_LIMIT = 1 << 16


class CensusLimitError(ValueError):
    """Full enumeration refused: the field at this level is too large."""


@dataclass(frozen=True)
class AffinePoint:
    x: FieldElement
    y: FieldElement
    level: int

    def __repr__(self) -> str:
        return f"({self.x.hex()},{self.y.hex()})@{self.level}"


@dataclass(frozen=True)
class InfinitePoint:
    index: int = 0

    def __repr__(self) -> str:
        return "P_inf"


CurvePoint = Union[AffinePoint, InfinitePoint]


def _census_field(curve: PlaneCurve, level: int) -> BinaryField:
    fld = curve.level_field(level)
    if fld.order >= CENSUS_FIELD_LIMIT:
        raise CensusLimitError(
            f"census over GF(2^{fld.m}) exceeds the 2^16-element ceiling; sample instead"
        )
    return fld


def _split_parts(curve: PlaneCurve, level: int):
    """(x-part, y-part, constant) of the defining polynomial, or None if
    mixed monomials prevent the separated fast path."""
    poly = curve.poly_at_level(level)
    xpart: dict[int, int] = {}
    ypart: dict[int, int] = {}
    const = 0
    for (i, j), c in poly.terms.items():
        if i and j:
            return None
        if j:
            ypart[j] = c
        elif i:
            xpart[i] = c
        else:
            const = c
    return xpart, ypart, const


def _eval_sparse(fld: BinaryField, part: dict[int, int], v: int) -> int:
    acc = 0
    for e, c in part.items():
        acc ^= fld.mul_int(c, fld.pow_int(v, e))
    return acc


def _solution_table(fld: BinaryField, ypart: dict[int, int]) -> dict[int, list[int]]:
    table: dict[int, list[int]] = {}
    for yb in range(fld.order):
        table.setdefault(_eval_sparse(fld, ypart, yb), []).append(yb)
    return table


def enumerate_points(curve: PlaneCurve, level: int) -> list[CurvePoint]:
    """All points at the given tower level, affine ones in lexicographic
    order of serialized (x, y), then the declared infinite points."""
    fld = _census_field(curve, level)
    points: list[CurvePoint] = []
    parts = _split_parts(curve, level)
    if parts is not None:
        xpart, ypart, const = parts
        table = _solution_table(fld, ypart)
        for xb in range(fld.order):
            target = _eval_sparse(fld, xpart, xb) ^ const
            for yb in table.get(target, ()):
                points.append(AffinePoint(FieldElement(xb, fld), FieldElement(yb, fld), level))
    else:
        poly = curve.poly_at_level(level)
        for xb in range(fld.order):
            x = FieldElement(xb, fld)
            for yb in range(fld.order):
                if not poly.evaluate(x, FieldElement(yb, fld)):
                    points.append(AffinePoint(x, FieldElement(yb, fld), level))
    points.extend(InfinitePoint(k) for k in range(curve.infinity.count))
    return points


def count_rational(curve: PlaneCurve, level: int = 1, slices: int = 1) -> int:
    """Number of points at the given level; slice-partitioned fold over x."""
    fld = _census_field(curve, level)
    parts = _split_parts(curve, level)
    if parts is None:
        return len(enumerate_points(curve, level))
    xpart, ypart, const = parts
    table = _solution_table(fld, ypart)
    slices = max(1, min(slices, fld.order))
    bounds = [fld.order * k // slices for k in range(slices + 1)]
    total = 0
    for lo, hi in zip(bounds, bounds[1:]):
        part_count = 0
        for xb in range(lo, hi):
            target = _eval_sparse(fld, xpart, xb) ^ const
            part_count += len(table.get(target, ()))
        total += part_count
    return total + curve.infinity.count


def frobenius_point(curve: PlaneCurve, point: CurvePoint) -> CurvePoint:
    """The GF(q^2)-Frobenius image (x, y) -> (x^(q^2), y^(q^2))."""
    if isinstance(point, InfinitePoint):
        return point
    k = 2 * curve.t
    return AffinePoint(point.x.frobenius(k), point.y.frobenius(k), point.level)


def is_rational(curve: PlaneCurve, point: CurvePoint) -> bool:
    """True iff the point is GF(q^2)-rational."""
    if isinstance(point, InfinitePoint):
        return curve.infinity.rational
    return point.x.in_subfield(2 * curve.t) and point.y.in_subfield(2 * curve.t)


def on_curve(curve: PlaneCurve, point: CurvePoint) -> bool:
    if isinstance(point, InfinitePoint):
        return point.index < curve.infinity.count
    return not curve.evaluate(point.x, point.y)


def hasse_weil_max(q: int, g: int) -> int:
    """The Hasse-Weil upper bound q^2 + 1 + 2qg for GF(q^2)-points."""
    if g < 0:
        raise ValueError("genus must be non-negative")
    return q * q + 1 + 2 * q * g


def is_maximal(curve: PlaneCurve, g: int) -> bool:
    """True iff the level-1 point count attains the Hasse-Weil bound."""
    return count_rational(curve, 1) == hasse_weil_max(curve.q, g)


def g1(q: int) -> int:
    """Largest genus of a GF(q^2)-maximal curve: q(q-1)/2."""
    return q * (q - 1) // 2


def g2(q: int) -> int:
    """Second-largest genus floor((q-1)^2/4); equals q(q-2)/4 for even q."""
    value = (q - 1) ** 2 // 4
    if q % 2 == 0 and value != q * (q - 2) // 4:
        raise AssertionError("genus formulas diverge for even q")
    return value


def genus_bounds(q: int, n: int) -> Fraction:
    """Exact upper bound for 2g when the one-point system has projective
    dimension n+1: (q - n/2)^2/n for even n, else ((q - n/2)^2 - 1/4)/n."""
    if n < 1:
        raise ValueError("dimension must be at least 1")
    if n % 2 == 0:
        return Fraction((2 * q - n) ** 2, 4 * n)
    return Fraction((2 * q - n) ** 2 - 1, 4 * n)


@dataclass(frozen=True)
class CensusReport:
    q: int
    family: str
    level: int
    count: int
    genus: int
    expected: int
    maximal: bool

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "family": self.family,
            "level": self.level,
            "count": self.count,
            "expected": self.expected,
            "maximal": self.maximal,
        }


def census_report(curve: PlaneCurve, genus: int, level: int = 1, slices: int = 1) -> CensusReport:
    count = count_rational(curve, level, slices)
    expected = hasse_weil_max(curve.q, genus)
    return CensusReport(
        q=curve.q,
        family=curve.family,
        level=level,
        count=count,
        genus=genus,
        expected=expected,
        maximal=(level == 1 and count == expected),
    )


def curve_genus(curve: PlaneCurve) -> int:
    """The genus of the nonsingular model of a built-in family."""
    if curve.family == "hermitian":
        return g1(curve.q)
    return g2(curve.q)


def sample_points(
    curve: PlaneCurve,
    level: int,
    count: int,
    rng,
    rational: bool | None = None,
    exclude_infinity: bool = True,
) -> list[CurvePoint]:
    """Deterministic sample of enumerated points, filtered by rationality.

    With rational=None all points qualify; True keeps GF(q^2)-rational
    ones; False keeps the rest.  Sampling is without replacement; if
    fewer points qualify than requested the full list is returned.
    """
    pool: Iterable[CurvePoint] = enumerate_points(curve, level)
    if exclude_infinity:
        pool = [p for p in pool if isinstance(p, AffinePoint)]
    if rational is not None:
        pool = [p for p in pool if is_rational(curve, p) == rational]
    pool = list(pool)
    if count >= len(pool):
        return pool
    return rng.sample(pool, count)
