"""Order sequences of the degree-(q+1) one-point system on the built-in curves.

The linear system spanned by (1, x, x^2, y) is expanded into truncated
series at an affine point; the pivot columns of the row-reduced
coefficient matrix are exactly the intersection multiplicities attained
by hyperplane sections, i.e. the order sequence at the point.  At the
infinite point the orders come from the Weierstrass semigroup instead
(no series at infinity anywhere in this package).

Also here: the Frobenius-collinearity identity

    y + y^(q^2) + (x + x^(q^2)) Dy + (x^2 + x^(2q^2)) D^2 y = 0

checked as a truncated-series residual, the evidence-based Frobenius
order sequence (0, 1, q), and the ramification-degree arithmetic used by
the q = 4 impossibility argument.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import semigroups
from .census import AffinePoint, is_rational, sample_points
from .curves import PlaneCurve
from .fields import FieldElement
from .series import (
    PrecisionError,
    TruncatedSeries,
    expand_y_at,
    verify_derivative_facts,
)


@dataclass(frozen=True)
class LinearSystemBasis:
    """The function basis (1, x, x^2, y) of the degree-(q+1) system."""

    functions: tuple[str, ...] = ("1", "x", "x^2", "y")
    projective_dim: int = 3

    def degree(self, q: int) -> int:
        return q + 1

    def series_at(self, curve: PlaneCurve, point: AffinePoint, n: int) -> list[TruncatedSeries]:
        fld = point.x.field
        one = TruncatedSeries.constant(FieldElement(1, fld), n)
        xs = TruncatedSeries.local_parameter_shifted(point.x, n)
        x2 = (xs * xs).truncate(n)
        ys = expand_y_at(curve, point, n)
        return [one, xs, x2, ys]


@dataclass(frozen=True)
class OrderData:
    point: tuple[str, str] | str
    orders: tuple[int, int, int, int]
    classification: str  # at-P0 | rational | non-rational


def _pivot_columns(fld, rows: list[list[int]]) -> list[int]:
    """Pivot columns of a small matrix over the field, by row echelon."""
    nrows = len(rows)
    width = len(rows[0])
    pivots = []
    r = 0
    for col in range(width):
        sel = None
        for k in range(r, nrows):
            if rows[k][col]:
                sel = k
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = fld.inv_int(rows[r][col])
        for k in range(nrows):
            if k != r and rows[k][col]:
                factor = fld.mul_int(rows[k][col], inv)
                rk, rr = rows[k], rows[r]
                rows[k] = [a ^ fld.mul_int(factor, b) for a, b in zip(rk, rr)]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return pivots


def dp_orders(curve: PlaneCurve, point: AffinePoint, n: int | None = None) -> OrderData:
    """The order sequence of |(q+1)P_inf| at an affine point.

    Expands 1, x, x^2, y to precision n and reads the pivot columns of
    the 4 x n coefficient matrix.  Raises :class:`PrecisionError` when
    fewer than four pivots fit below n (retry with larger n).
    """
    q = curve.q
    if n is None:
        n = 2 * q + 8
    if n < q + 3:
        raise ValueError(f"precision {n} too small; need at least q+3 = {q + 3}")
    basis = LinearSystemBasis()
    rows = []
    for s in basis.series_at(curve, point, n):
        dense = [0] * n
        for k, c in enumerate(s.coeffs):
            if s.v + k < n:
                dense[s.v + k] = c
        rows.append(dense)
    pivots = _pivot_columns(point.x.field, rows)
    if len(pivots) < 4:
        raise PrecisionError(
            f"only {len(pivots)} orders visible below precision {n}; increase precision"
        )
    orders = tuple(pivots)
    assert orders[0] == 0 and orders[1] == 1, "system must be base-point-free and classical"
    tag = "rational" if is_rational(curve, point) else "non-rational"
    return OrderData(point=(point.x.hex(), point.y.hex()), orders=orders, classification=tag)


def dp_orders_at_infinity(curve: PlaneCurve) -> OrderData:
    """Orders at the infinite point, derived from the Weierstrass
    semigroup <q/2, q+1>: {0, 1, q+1-m_1, q+1}.  Refuses the Hermitian
    curve, whose one-point system has projective dimension 2 and does
    not fit this basis."""
    if curve.family not in ("trace-standard", "trace-form", "trace-form-extended"):
        raise ValueError("infinity orders via the semigroup apply to the trace family only")
    q = curve.q
    sg = semigroups.infinity_semigroup(q)
    m1 = sg.nth_nongap(1)
    orders = (0, 1, q + 1 - m1, q + 1)
    return OrderData(point="infinity", orders=orders, classification="at-P0")


def frobenius_identity_check(curve: PlaneCurve, point: AffinePoint, n: int | None = None) -> dict:
    """Residual of y + y^(q^2) + (x + x^(q^2))Dy + (x^2 + x^(2q^2))D^2y
    at an affine point, as a series modulo tau^(n-2).

    Needs n <= q^2 so that tau^(q^2) truncates away and the Frobenius
    twists of x and y reduce to constants.
    """
    q = curve.q
    if n is None:
        n = min(2 * q + 8, q * q)
    if n > q * q:
        raise ValueError(f"precision {n} exceeds q^2 = {q * q}; Frobenius twist would survive")
    if n < 4:
        raise ValueError("precision too small to see the identity")
    fld = point.x.field
    k = 2 * curve.t  # the GF(q^2)-Frobenius is the 2^(2t)-power
    ys = expand_y_at(curve, point, n)
    xs = TruncatedSeries.local_parameter_shifted(point.x, n)
    dy = ys.hasse_derivative(1)
    d2y = ys.hasse_derivative(2)

    y_frob = TruncatedSeries.constant(point.y.frobenius(k), n)
    x_frob = TruncatedSeries.constant(point.x.frobenius(k), n)
    x2_frob = TruncatedSeries.constant(point.x.frobenius(k).square(), n)

    lhs = ys + y_frob + (xs + x_frob) * dy + ((xs * xs).truncate(n) + x2_frob) * d2y
    residual_prec = min(lhs.prec, n - 2)
    ok = lhs.is_zero_mod(residual_prec)
    return {
        "point": (point.x.hex(), point.y.hex()),
        "residual_zero": ok,
        "precision": residual_prec,
    }


def frobenius_orders(
    curve: PlaneCurve, sample_size: int, rng, n: int | None = None
) -> tuple[tuple[int, int, int], list[dict]]:
    """The Frobenius order sequence (0, 1, q) of the trace curve, with a
    sampled evidence log: at each point, D^i y = 0 for 3 <= i <= q-1
    (no orders strictly between 2 and q) and the Frobenius-collinearity
    residual vanishes (the order 2 drops).  Raises if any check fails."""
    if curve.family not in ("trace-standard", "trace-form"):
        raise ValueError("Frobenius orders are computed for the trace family")
    if sample_size < 1:
        raise ValueError("sample_size must be at least 1")
    q = curve.q
    if n is None:
        n = min(2 * q + 8, q * q)
    points = sample_points(curve, level=1, count=sample_size, rng=rng)
    evidence = []
    for p in points:
        facts = verify_derivative_facts(curve, p, n)
        frob = frobenius_identity_check(curve, p, n)
        entry = {
            "point": frob["point"],
            "middle_derivatives_vanish": facts.middle_vanish,
            "dy_is_xq": facts.dy_is_xq,
            "d2y_matches": facts.d2y_is_x2q,
            "frobenius_residual_zero": frob["residual_zero"],
        }
        evidence.append(entry)
        if not (facts.middle_vanish and frob["residual_zero"]):
            raise ArithmeticError(f"Frobenius-order evidence failed at {entry['point']}")
    return (0, 1, q), evidence


def sv_ramification_degree(eps: Sequence[int], g: int, n: int, d: int) -> int:
    """Degree of the ramification divisor of a system of projective
    dimension n and degree d on a genus-g curve: (sum eps_i)(2g-2) + (n+1)d."""
    if len(eps) != n + 1:
        raise ValueError(f"expected n+1 = {n + 1} orders, got {len(eps)}")
    if any(a >= b for a, b in zip(eps, eps[1:])):
        raise ValueError("order sequence must be strictly increasing")
    return sum(eps) * (2 * g - 2) + (n + 1) * d


def degree_count_impossibility() -> dict:
    """The q = 4 ramification-degree bookkeeping that rules out genus-2
    curves whose rational points all have first non-gap 3.

    Equate the candidate degree 36*(2g-2) + 40 with twice the point
    count 2*(4*(2g-2) + 25); the equation reduces to 28*(2g-2) = 10,
    which has no integer solution, let alone a non-negative even one.
    (The specialized constant 40 differs from the generic (n+1)*d term
    9*10 = 90 at n = 8, d = 10; with 90 the reduction is 28*(2g-2) = -40,
    equally unsolvable, so the contradiction stands either way.)
    """
    sum_eps = sum(range(9))  # orders 0..8 of the doubled system
    assert sum_eps == 36
    reduced_coeff = sum_eps - 2 * 4  # 36u + 40 = 8u + 50
    reduced_value = 2 * 25 - 40
    solutions = [u for u in range(0, 4 * reduced_value + 1, 2) if reduced_coeff * u == reduced_value]
    generic_term = (8 + 1) * 10
    generic_value = 2 * 25 - generic_term
    generic_solutions = [
        u for u in range(0, 4 * abs(generic_value) + 1, 2) if reduced_coeff * u == generic_value
    ]
    return {
        "sum_orders": sum_eps,
        "reduced_equation": {"coefficient": reduced_coeff, "value": reduced_value},
        "even_nonnegative_solutions": solutions,
        "contradiction": not solutions,
        "generic_second_term": generic_term,
        "generic_equation_solutions": generic_solutions,
        "contradiction_with_generic_term": not generic_solutions,
    }
