"""Exact arithmetic in the binary field tower GF(q) < GF(q^2) < GF(q^4), q = 2^t.

Elements are m-bit masks: bit i is the coefficient of z^i in the residue
class modulo a fixed irreducible polynomial of degree m, so addition is
XOR and 0/1 are the additive/multiplicative identities.  The reduction
polynomial for each supported degree is read from a shipped table
(lowest weight, then numerically smallest), which keeps serialized
elements reproducible bit-exactly across runs.

Two tower levels are supported per t: ``base-square`` is GF(2^{2t}) and
houses the curve coefficients, ``quartic`` is GF(2^{4t}) and houses the
degree-4 extension points.  GF(q) itself is not a separate structure: it
is the fixed field of the q-power map inside GF(q^2), and subfield
membership is a single exponentiation test.

Multiplication is shift-and-reduce, accelerated by log/antilog tables
for m <= 16; inverses are computed as a^(2^m - 2).
"""

from __future__ import annotations

from importlib import resources
from typing import Iterator, Sequence

MAX_T = 5
LEVELS = ("base-square", "quartic")

_TABLE_LIMIT = 16  # build log/antilog tables only up to GF(2^16)


def _load_moduli() -> dict[int, int]:
    text = resources.files("maxcurves.data").joinpath("moduli.txt").read_text()
    table = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition(":")
        table[int(key)] = int(value.strip(), 16)
    return table


_MODULI = _load_moduli()


def poly_degree(mask: int) -> int:
    """Degree of a GF(2)[z] polynomial given as a bit mask (-1 for 0)."""
    return mask.bit_length() - 1


def poly_mod(a: int, b: int) -> int:
    """Remainder of carry-less division of a by b over GF(2)."""
    db = poly_degree(b)
    while a and poly_degree(a) >= db:
        a ^= b << (poly_degree(a) - db)
    return a


def is_irreducible(mask: int) -> bool:
    """Brute-force irreducibility over GF(2): trial division up to degree m/2."""
    m = poly_degree(mask)
    if m <= 0:
        return False
    for d in range(1, m // 2 + 1):
        for cand in range(1 << d, 1 << (d + 1)):
            if poly_mod(mask, cand) == 0:
                return False
    return True


class BinaryField:
    """GF(2^m) with a fixed reduction polynomial, describing one tower level.

    Do not instantiate directly: use :func:`make_field`, which interns
    one object per (t, level) so field identity can be checked with
    ``is``.
    """

    def __init__(self, t: int, level: str, m: int, modulus: int) -> None:
        if not is_irreducible(modulus):
            raise ValueError(f"table modulus {modulus:#x} for m={m} is not irreducible")
        self.t = t
        self.level = level
        self.m = m
        self.modulus = modulus
        self.q = 1 << t
        self.order = 1 << m
        self.hex_width = (m + 3) // 4
        self._log: list[int] | None = None
        self._exp: list[int] | None = None
        self._embedding: list[int] | None = None  # basis images in the quartic field

    def __repr__(self) -> str:
        return f"BinaryField(t={self.t}, level={self.level!r}, m={self.m})"

    # -- raw int arithmetic ------------------------------------------------

    def _mul_raw(self, a: int, b: int) -> int:
        top = 1 << self.m
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= self.modulus
        return r

    def _build_tables(self) -> None:
        # the reduction polynomial need not be primitive, so search for a
        # multiplicative generator in ascending mask order (z itself works
        # for most shipped moduli)
        order = self.order
        for g in range(2, order):
            exp = [0] * (2 * order)
            log = [0] * order
            v = 1
            ok = True
            for i in range(order - 1):
                if v == 1 and i > 0:
                    ok = False
                    break
                exp[i] = v
                log[v] = i
                v = self._mul_raw(v, g)
            if ok:
                for i in range(order - 1, 2 * order):
                    exp[i] = exp[i - (order - 1)]
                self._exp = exp
                self._log = log
                return
        raise AssertionError("no multiplicative generator found")  # unreachable

    def mul_int(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._log is None:
            if self.m > _TABLE_LIMIT:
                return self._mul_raw(a, b)
            self._build_tables()
        return self._exp[self._log[a] + self._log[b]]

    def sqr_int(self, a: int) -> int:
        return self.mul_int(a, a)

    def pow_int(self, a: int, e: int) -> int:
        if e < 0:
            raise ValueError("negative exponent; use inv_int first")
        if a == 0:
            return 1 if e == 0 else 0
        if self._log is not None:
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        r = 1
        base = a
        while e:
            if e & 1:
                r = self.mul_int(r, base)
            base = self.mul_int(base, base)
            e >>= 1
        return r

    def inv_int(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no inverse")
        return self.pow_int(a, self.order - 2)

    def frob_int(self, a: int, k: int) -> int:
        """a^(2^k), the k-fold binary Frobenius."""
        for _ in range(k % self.m if a else 0):
            a = self.mul_int(a, a)
        return a

    # -- elements ------------------------------------------------------------

    def element(self, bits: int) -> FieldElement:
        if not 0 <= bits < self.order:
            raise ValueError(f"mask {bits:#x} out of range for GF(2^{self.m})")
        return FieldElement(bits, self)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(0, self)

    @property
    def one(self) -> FieldElement:
        return FieldElement(1, self)

    def elements(self) -> Iterator[FieldElement]:
        for bits in range(self.order):
            yield FieldElement(bits, self)

    def from_hex(self, text: str) -> FieldElement:
        return self.element(int(text, 16))

    def to_hex(self, bits: int) -> str:
        return format(bits, f"0{self.hex_width}x")

    # -- embedding of the base-square field into the quartic field ------------

    def _embedding_images(self) -> list[int]:
        """Images of the base-square power basis z^i in this quartic field.

        The embedding sends the base generator z to the numerically
        smallest root of the base reduction polynomial here, which pins
        one canonical embedding out of the 2t conjugate choices.
        """
        if self.level != "quartic":
            raise ValueError("embedding target must be a quartic field")
        if self._embedding is None:
            base = make_field(self.t, "base-square")
            sub = self.subfield_masks(base.m)
            roots = [s for s in sub if _eval_poly_mask(self, base.modulus, s) == 0]
            if not roots:
                raise AssertionError("base modulus has no root in the quartic field")
            beta = min(roots)
            images = [1]
            for _ in range(1, base.m):
                images.append(self.mul_int(images[-1], beta))
            self._embedding = images
        return self._embedding

    def subfield_masks(self, sub_degree: int) -> list[int]:
        """All masks of the subfield GF(2^sub_degree), ascending.

        Collected as norms c^((2^m-1)/(2^d-1)) rather than by scanning
        the whole field, so it stays usable at m = 20.
        """
        if self.m % sub_degree != 0:
            raise ValueError(f"{sub_degree} does not divide m={self.m}")
        target = 1 << sub_degree
        e = (self.order - 1) // (target - 1)
        found = {0}
        for c in range(1, self.order):
            found.add(self.pow_int(c, e))
            if len(found) == target:
                break
        return sorted(found)

    def embed(self, a: FieldElement) -> FieldElement:
        """Map an element of the base-square field of the same t into this field."""
        if a.field is self:
            return a
        base = make_field(self.t, "base-square")
        if a.field is not base:
            raise ValueError(f"cannot embed {a.field!r} into {self!r}")
        images = self._embedding_images()
        bits = 0
        mask = a.bits
        i = 0
        while mask:
            if mask & 1:
                bits ^= images[i]
            mask >>= 1
            i += 1
        return FieldElement(bits, self)


class FieldElement:
    """An element of a :class:`BinaryField`, as an immutable bit mask."""

    __slots__ = ("bits", "field")

    def __init__(self, bits: int, field: BinaryField) -> None:
        object.__setattr__(self, "bits", bits)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("FieldElement is immutable")

    def _check(self, other: FieldElement) -> None:
        if not isinstance(other, FieldElement) or other.field is not self.field:
            raise ValueError("field elements belong to different fields")

    def __add__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.bits ^ other.bits, self.field)

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.field.mul_int(self.bits, other.bits), self.field)

    def __pow__(self, e: int) -> FieldElement:
        return FieldElement(self.field.pow_int(self.bits, e), self.field)

    def __truediv__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return self * other.inv()

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldElement)
            and other.field is self.field
            and other.bits == self.bits
        )

    def __hash__(self) -> int:
        return hash((self.bits, id(self.field)))

    def __lt__(self, other: FieldElement) -> bool:
        self._check(other)
        return self.bits < other.bits

    def __bool__(self) -> bool:
        return self.bits != 0

    def __repr__(self) -> str:
        return f"<{self.hex()}:GF(2^{self.field.m})>"

    def hex(self) -> str:
        """Fixed-width lowercase hex of the mask, LSB = constant term."""
        return self.field.to_hex(self.bits)

    def inv(self) -> FieldElement:
        return FieldElement(self.field.inv_int(self.bits), self.field)

    def square(self) -> FieldElement:
        return FieldElement(self.field.sqr_int(self.bits), self.field)

    def frobenius(self, k: int) -> FieldElement:
        """The power a^(2^k)."""
        return FieldElement(self.field.frob_int(self.bits, k), self.field)

    def in_subfield(self, sub_degree: int) -> bool:
        """True iff a^(2^sub_degree) = a, for sub_degree dividing m."""
        if self.field.m % sub_degree != 0:
            raise ValueError(f"{sub_degree} does not divide m={self.field.m}")
        return self.field.frob_int(self.bits, sub_degree) == self.bits

    def absolute_trace(self) -> int:
        """Trace down to GF(2), returned as the int 0 or 1."""
        acc = 0
        a = self.bits
        for _ in range(self.field.m):
            acc ^= a
            a = self.field.sqr_int(a)
        if acc not in (0, 1):
            raise AssertionError("absolute trace escaped GF(2)")
        return acc

    def trace_to(self, sub_degree: int) -> FieldElement:
        """Relative trace onto GF(2^sub_degree)."""
        if self.field.m % sub_degree != 0:
            raise ValueError(f"{sub_degree} does not divide m={self.field.m}")
        acc = 0
        a = self.bits
        for _ in range(self.field.m // sub_degree):
            acc ^= a
            a = self.field.frob_int(a, sub_degree)
        return FieldElement(acc, self.field)

    def norm_to(self, sub_degree: int) -> FieldElement:
        """Relative norm onto GF(2^sub_degree)."""
        if self.field.m % sub_degree != 0:
            raise ValueError(f"{sub_degree} does not divide m={self.field.m}")
        acc = 1
        a = self.bits
        for _ in range(self.field.m // sub_degree):
            acc = self.field.mul_int(acc, a)
            a = self.field.frob_int(a, sub_degree)
        return FieldElement(acc, self.field)


def _eval_poly_mask(field: BinaryField, poly_mask: int, x: int) -> int:
    """Evaluate a GF(2)[z] polynomial (bit mask) at a field element (Horner)."""
    r = 0
    for i in range(poly_degree(poly_mask), -1, -1):
        r = field.mul_int(r, x)
        if (poly_mask >> i) & 1:
            r ^= 1
    return r


_FIELD_CACHE: dict[tuple[int, str], BinaryField] = {}


def make_field(t: int, level: str = "base-square") -> BinaryField:
    """The interned field GF(2^2t) (``base-square``) or GF(2^4t) (``quartic``)."""
    if not 1 <= t <= MAX_T:
        raise ValueError(f"t={t} outside supported range [1, {MAX_T}]")
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}")
    key = (t, level)
    if key not in _FIELD_CACHE:
        m = 2 * t if level == "base-square" else 4 * t
        if m not in _MODULI:
            raise ValueError(f"no table modulus for degree m={m}")
        _FIELD_CACHE[key] = BinaryField(t, level, m, _MODULI[m])
    return _FIELD_CACHE[key]


# -- GF(2)-linear solvers ------------------------------------------------------


def _solve_gf2(field: BinaryField, columns: Sequence[int], target: int) -> list[int]:
    """All masks v with sum over set bits j of columns[j] equal to target.

    columns[j] is the image of the basis mask 1<<j under a GF(2)-linear
    map of the field; solving is plain Gaussian elimination on the m x m
    system.  Returns the full (possibly empty) coset, ascending.
    """
    m = field.m
    rows = []
    for i in range(m):
        row = 0
        for j in range(m):
            row |= ((columns[j] >> i) & 1) << j
        rows.append((row, (target >> i) & 1))

    pivot_of_col: dict[int, int] = {}
    r = 0
    for col in range(m):
        sel = None
        for k in range(r, m):
            if (rows[k][0] >> col) & 1:
                sel = k
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        for k in range(m):
            if k != r and (rows[k][0] >> col) & 1:
                rows[k] = (rows[k][0] ^ rows[r][0], rows[k][1] ^ rows[r][1])
        pivot_of_col[col] = r
        r += 1
    for k in range(r, m):
        if rows[k][1]:
            return []

    particular = 0
    for col, prow in pivot_of_col.items():
        if rows[prow][1]:
            particular |= 1 << col
    kernel = []
    for free in range(m):
        if free in pivot_of_col:
            continue
        vec = 1 << free
        for col, prow in pivot_of_col.items():
            if (rows[prow][0] >> free) & 1:
                vec |= 1 << col
        kernel.append(vec)

    sols = [particular]
    for basis_vec in kernel:
        sols += [s ^ basis_vec for s in sols]
    return sorted(sols)


def solve_artin_schreier(c: FieldElement) -> list[FieldElement]:
    """All u in c's field with u^2 + u = c, ascending.

    The solution set has size 0 or 2 (the kernel of u^2 + u is GF(2)),
    and is nonempty exactly when the absolute trace of c vanishes.
    """
    field = c.field
    cols = [field.sqr_int(1 << j) ^ (1 << j) for j in range(field.m)]
    return [FieldElement(s, field) for s in _solve_gf2(field, cols, c.bits)]


def linearized_solve(coeffs: Sequence[FieldElement], b: FieldElement) -> list[FieldElement]:
    """All alpha in GF(q^2) with sum of coeffs[i-1] * alpha^(q/2^i) = b.

    The additive map alpha -> sum a_i alpha^(2^(t-i)) is GF(2)-linear on
    the 2t-dimensional GF(2)-space underlying GF(q^2); the full solution
    coset is returned (possibly empty), ascending.
    """
    if not coeffs or all(a.bits == 0 for a in coeffs):
        raise ValueError("all-zero coefficient list defines the zero map")
    field = b.field
    t = field.t
    if len(coeffs) != t:
        raise ValueError(f"expected t={t} coefficients, got {len(coeffs)}")
    for a in coeffs:
        if a.field is not field:
            raise ValueError("coefficients and target live in different fields")

    def image(x: int) -> int:
        acc = 0
        for i, a in enumerate(coeffs, start=1):
            acc ^= field.mul_int(a.bits, field.frob_int(x, t - i))
        return acc

    cols = [image(1 << j) for j in range(field.m)]
    return [FieldElement(s, field) for s in _solve_gf2(field, cols, b.bits)]
