"""Truncated power series at affine curve points, with Hasse derivatives.

A series is a finite window of coefficients over a tower field: it
represents sum_k coeffs[k] * tau^(v+k) + O(tau^(v+N)) where tau is the
local parameter x - x(P).  Precision bookkeeping is conservative (min
rules under addition and multiplication), and asking questions beyond
the stored precision raises :class:`PrecisionError` rather than
guessing: "insufficient precision" is always distinct from "identity
fails".

Expansions of y along the curve are produced by Newton iteration, which
doubles the correct precision each round; the built-in families have a
constant nonzero dF/dy, so every affine point is a simple (Hensel) root
in y.

Hasse derivatives act coefficientwise through binomials mod 2, evaluated
by Lucas' rule: binom(n, i) is odd iff the bits of i are a subset of the
bits of n.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curves import PlaneCurve, Poly2
from .fields import BinaryField, FieldElement


class PrecisionError(ArithmeticError):
    """A computation asked for more precision than the operands carry."""


def binom_mod2(n: int, k: int) -> int:
    """binom(n, k) mod 2 by Lucas' theorem."""
    if k < 0 or k > n:
        return 0
    return 1 if (n & k) == k else 0


class TruncatedSeries:
    """sum_k coeffs[k] tau^(v+k), known modulo tau^(v + len(coeffs))."""

    __slots__ = ("field", "v", "coeffs")

    def __init__(self, field: BinaryField, v: int, coeffs: tuple[int, ...]) -> None:
        self.field = field
        self.v = v
        self.coeffs = tuple(coeffs)

    # -- construction ----------------------------------------------------------

    @classmethod
    def constant(cls, value: FieldElement, prec: int) -> TruncatedSeries:
        if prec < 1:
            raise PrecisionError("a constant needs precision at least 1")
        return cls(value.field, 0, (value.bits,) + (0,) * (prec - 1))

    @classmethod
    def local_parameter_shifted(cls, x0: FieldElement, prec: int) -> TruncatedSeries:
        """The series x0 + tau (the x-coordinate function near x = x0)."""
        if prec < 2:
            raise PrecisionError("x0 + tau needs precision at least 2")
        return cls(x0.field, 0, (x0.bits, 1) + (0,) * (prec - 2))

    # -- bookkeeping -----------------------------------------------------------

    @property
    def prec(self) -> int:
        """Absolute precision: the series is known modulo tau^prec."""
        return self.v + len(self.coeffs)

    @property
    def rel_prec(self) -> int:
        return len(self.coeffs)

    def valuation(self) -> int | None:
        """Exponent of the first nonzero coefficient; None when every
        stored coefficient vanishes (unknown beyond precision)."""
        for k, c in enumerate(self.coeffs):
            if c:
                return self.v + k
        return None

    def coefficient(self, exponent: int) -> FieldElement:
        if exponent >= self.prec:
            raise PrecisionError(f"coefficient of tau^{exponent} beyond precision {self.prec}")
        if exponent < self.v:
            return FieldElement(0, self.field)
        return FieldElement(self.coeffs[exponent - self.v], self.field)

    def truncate(self, prec: int) -> TruncatedSeries:
        if prec > self.prec:
            raise PrecisionError(f"cannot extend precision {self.prec} to {prec}")
        return TruncatedSeries(self.field, self.v, self.coeffs[: max(prec - self.v, 0)])

    def is_zero_mod(self, prec: int | None = None) -> bool:
        """True iff every known coefficient below the given precision vanishes."""
        if prec is None:
            prec = self.prec
        elif prec > self.prec:
            raise PrecisionError(f"zero test modulo tau^{prec} beyond precision {self.prec}")
        return not any(self.coeffs[: prec - self.v])

    def __repr__(self) -> str:
        hexes = " ".join(self.field.to_hex(c) for c in self.coeffs)
        return f"{self.v} + [{hexes}] mod t^{self.prec}"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries) or other.field is not self.field:
            return NotImplemented
        return (self + other).is_zero_mod()  # agree to the shared precision

    def __hash__(self) -> int:  # pragma: no cover - not used as dict keys
        return hash((id(self.field), self.v, self.coeffs))

    # -- arithmetic --------------------------------------------------------------

    def _check(self, other: TruncatedSeries) -> None:
        if other.field is not self.field:
            raise ValueError("series live over different fields")

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        v = min(self.v, other.v)
        prec = min(self.prec, other.prec)
        out = [0] * max(prec - v, 0)
        for src in (self, other):
            for k, c in enumerate(src.coeffs):
                e = src.v + k
                if e < prec:
                    out[e - v] ^= c
        return TruncatedSeries(self.field, v, tuple(out))

    __sub__ = __add__

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        v = self.v + other.v
        prec = min(self.prec + other.v, other.prec + self.v)
        n = max(prec - v, 0)
        out = [0] * n
        fld = self.field
        for i, a in enumerate(self.coeffs):
            if not a or i >= n:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j >= n:
                    break
                if b:
                    out[i + j] ^= fld.mul_int(a, b)
        return TruncatedSeries(fld, v, tuple(out))

    def scale(self, c: FieldElement) -> TruncatedSeries:
        if c.field is not self.field:
            raise ValueError("scalar lives over a different field")
        fld = self.field
        return TruncatedSeries(
            fld, self.v, tuple(fld.mul_int(c.bits, a) for a in self.coeffs)
        )

    def shift(self, k: int) -> TruncatedSeries:
        """Multiply by tau^k."""
        return TruncatedSeries(self.field, self.v + k, self.coeffs)

    def pow2k(self, k: int) -> TruncatedSeries:
        """The 2^k-th power; exact in characteristic 2, spreading exponents."""
        step = 1 << k
        fld = self.field
        n = (len(self.coeffs) - 1) * step + 1 if self.coeffs else 0
        # (S + O(tau^p))^(2^k) = S^(2^k) + O(tau^(p * 2^k))
        n = max(n, self.prec * step - self.v * step)
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            if a:
                out[i * step] = fld.frob_int(a, k)
        return TruncatedSeries(fld, self.v * step, tuple(out))

    def __pow__(self, e: int) -> TruncatedSeries:
        if e < 0:
            raise ValueError("negative powers of series are not supported")
        if e == 0:
            return TruncatedSeries.constant(FieldElement(1, self.field), max(self.rel_prec, 1))
        result = None
        base = self
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base.pow2k(1)
        return result

    def hasse_derivative(self, i: int) -> TruncatedSeries:
        """Coefficientwise binom(n, i) shift; precision drops by i."""
        if i < 0:
            raise ValueError("derivative order must be non-negative")
        if i == 0:
            return self
        v = max(self.v - i, 0)
        prec = self.prec - i
        if prec <= v:
            raise PrecisionError(f"order-{i} derivative exhausts precision {self.prec}")
        out = [0] * (prec - v)
        for k, c in enumerate(self.coeffs):
            n = self.v + k
            if c and n - i >= v and n - i < prec and binom_mod2(n, i):
                out[n - i - v] ^= c
        return TruncatedSeries(self.field, v, tuple(out))


def hasse_derivative(s: TruncatedSeries, i: int) -> TruncatedSeries:
    return s.hasse_derivative(i)


def series_equal_mod(a: TruncatedSeries, b: TruncatedSeries, prec: int | None = None) -> bool:
    diff = a + b
    if prec is None:
        return diff.is_zero_mod()
    return diff.is_zero_mod(min(prec, diff.prec))


def _poly_on_series(poly: Poly2, xs: TruncatedSeries, ys: TruncatedSeries, prec: int) -> TruncatedSeries:
    """Evaluate a bivariate polynomial on series arguments, mod tau^prec."""
    fld = xs.field
    acc = TruncatedSeries(fld, 0, (0,) * prec)
    xpow: dict[int, TruncatedSeries] = {}
    ypow: dict[int, TruncatedSeries] = {}
    for (i, j), c in sorted(poly.terms.items()):
        if i not in xpow:
            xpow[i] = (xs ** i).truncate(prec) if i else TruncatedSeries.constant(fld.one, prec)
        if j not in ypow:
            ypow[j] = (ys ** j).truncate(prec) if j else TruncatedSeries.constant(fld.one, prec)
        term = (xpow[i] * ypow[j]).truncate(prec).scale(FieldElement(c, fld))
        acc = acc + term
    return acc


def expand_y_at(curve: PlaneCurve, point, n: int) -> TruncatedSeries:
    """The unique series y(tau), tau = x - x(P), with y(0) = y(P) and
    F(x(P) + tau, y(tau)) = 0 mod tau^n, by Newton iteration."""
    if n < 1:
        raise ValueError("precision must be at least 1")
    x0, y0 = point.x, point.y
    fld = x0.field
    level = 1 if fld is curve.field else 2
    poly = curve.poly_at_level(level)
    if curve.evaluate(x0, y0):
        raise ValueError("point does not lie on the curve")
    fy = poly.partial_y()
    if not fy.is_constant():
        raise ValueError("dF/dy is not constant; expansion supports the built-in models")
    c = fy.coefficient(0, 0)
    if not c:
        raise ValueError("singular point: dF/dy vanishes")
    cinv = c.inv()

    correct = 1
    ys = TruncatedSeries.constant(y0, 1)
    while correct < n:
        correct = min(2 * correct, n)
        ys = TruncatedSeries(fld, 0, ys.coeffs + (0,) * (correct - len(ys.coeffs)))
        xs = TruncatedSeries.local_parameter_shifted(x0, correct)
        residual = _poly_on_series(poly, xs, ys, correct)
        ys = (ys + residual.scale(cinv)).truncate(correct)
    xs = TruncatedSeries.local_parameter_shifted(x0, n)
    if not _poly_on_series(poly, xs, ys, n).is_zero_mod(n):
        raise AssertionError("Newton iteration left a nonzero residual")
    return ys


def check_h_identities(field: BinaryField, count: int, rng, prec: int = 14) -> dict:
    """Property-test the Hasse-derivative identities on random series.

    H1: additivity; H2: Leibniz convolution; H3: derivatives of even
    powers are squares of half-order derivatives (zero at odd order);
    H3': the 2-power analogue for q' in {2, 4, 8}.
    """
    if count < 1:
        raise ValueError("count must be at least 1")

    def random_series(v: int = 0) -> TruncatedSeries:
        return TruncatedSeries(
            field, v, tuple(rng.randrange(field.order) for _ in range(prec))
        )

    report = {name: {"pass": 0, "fail": 0} for name in ("h1", "h2", "h3", "h3prime")}

    def tally(name: str, ok: bool) -> None:
        report[name]["pass" if ok else "fail"] += 1

    for _ in range(count):
        z, w = random_series(), random_series()

        i = rng.randrange(0, 9)
        lhs = (z + w).hasse_derivative(i)
        rhs = z.hasse_derivative(i) + w.hasse_derivative(i)
        tally("h1", series_equal_mod(lhs, rhs))

        i = rng.randrange(0, 7)
        lhs = (z * w).hasse_derivative(i)
        rhs = TruncatedSeries(field, 0, (0,) * (prec - i))
        for j in range(i + 1):
            rhs = rhs + z.hasse_derivative(i - j) * w.hasse_derivative(j)
        tally("h2", series_equal_mod(lhs, rhs))

        j = rng.randrange(1, 4)
        i = rng.randrange(0, 7)
        lhs = (z ** (2 * j)).truncate(prec).hasse_derivative(i)
        if i % 2 == 0:
            rhs = (z ** j).truncate(prec).hasse_derivative(i // 2).pow2k(1)
            tally("h3", series_equal_mod(lhs, rhs))
        else:
            tally("h3", lhs.is_zero_mod())

        qprime = 1 << rng.randrange(1, 4)
        i = rng.randrange(0, 2 * qprime + 1)
        lhs = z.pow2k(qprime.bit_length() - 1).truncate(qprime * prec).hasse_derivative(i)
        if i % qprime == 0:
            rhs = z.hasse_derivative(i // qprime).pow2k(qprime.bit_length() - 1)
            tally("h3prime", series_equal_mod(lhs, rhs))
        else:
            tally("h3prime", lhs.is_zero_mod())

    report["all_pass"] = all(v["fail"] == 0 for v in report.values() if isinstance(v, dict))
    return report


@dataclass(frozen=True)
class DerivativeFactsReport:
    """Series-level derivative facts of the trace models at one point."""

    q: int
    point: tuple[str, str]
    dy_is_xq: bool
    d2y_is_x2q: bool
    middle_range: tuple[int, int]
    middle_vanish: bool
    dy_valuation_at_infinity: int
    dx_dt_valuation_identity: bool

    def ok(self) -> bool:
        return self.dy_is_xq and self.d2y_is_x2q and self.middle_vanish


def verify_derivative_facts(curve: PlaneCurve, point, n: int) -> DerivativeFactsReport:
    """Check, as truncated-series identities at an affine point:
    a_t Dy = x^q, a_t^3 D^2 y = a_{t-1} x^(2q), and D^i y = 0 for
    3 <= i <= min(q-1, n-1)."""
    if curve.family not in ("trace-standard", "trace-form"):
        raise ValueError("derivative facts apply to the trace-shaped families")
    t, q = curve.t, curve.q
    if t < 2:
        raise ValueError("derivative facts need t >= 2 (the a_{t-1} coefficient)")
    if n <= q + 2:
        raise ValueError(f"precision {n} too small; need n > q+2 = {q + 2}")
    fld = point.x.field
    coeffs = curve.y_coeffs()
    if fld is not curve.field:
        coeffs = [fld.embed(a) for a in coeffs]
    a_t, a_t1 = coeffs[-1], coeffs[-2]

    ys = expand_y_at(curve, point, n)
    xs = TruncatedSeries.local_parameter_shifted(point.x, n)

    dy = ys.hasse_derivative(1)
    rhs1 = xs.pow2k(t).truncate(n - 1).scale(a_t.inv())
    dy_ok = series_equal_mod(dy, rhs1)

    d2y = ys.hasse_derivative(2)
    rhs2 = xs.pow2k(t + 1).truncate(n - 2).scale(a_t1 * (a_t.inv() ** 3))
    d2y_ok = series_equal_mod(d2y, rhs2)

    hi = min(q - 1, n - 1)
    middle_ok = all(ys.hasse_derivative(i).is_zero_mod() for i in range(3, hi + 1))

    # At the infinite point, Dy = a_t^{-1} x^q and the declared pole order
    # of x give v(Dy) = -q * q/2 without any series there.
    dy_val_inf = -q * curve.infinity.x_pole_order
    two_g_minus_2 = 2 * (q * (q - 2) // 4) - 2
    return DerivativeFactsReport(
        q=q,
        point=(point.x.hex(), point.y.hex()),
        dy_is_xq=dy_ok,
        d2y_is_x2q=d2y_ok,
        middle_range=(3, hi),
        middle_vanish=middle_ok,
        dy_valuation_at_infinity=dy_val_inf,
        dx_dt_valuation_identity=(two_g_minus_2 == q * q // 2 - q - 2),
    )
