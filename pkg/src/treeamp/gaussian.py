"""Exact arithmetic over Q and Q(i): denominators, the product formula,
and the commutator-forcing certificate.

Z[i] is Euclidean, so factorization reduces to gcd computations.  The
absolute value at the single complex place is normalized as the squared
modulus, which makes the full product formula exactly 1.  Local
denominators are q_v^max(-ord_v, 0) with q_v the residue size of the
place (2 for the ramified prime, p for split primes, p^2 for inert).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from sympy import factorint
from sympy.ntheory.residue_ntheory import sqrt_mod

__all__ = [
    "GaussInt",
    "GaussRat",
    "GaussPrime",
    "Mat2",
    "CommutatorVerdict",
    "ArchBoundViolation",
    "gaussian_factor",
    "denom_local",
    "denom",
    "denom_mat",
    "product_formula_check",
    "commutator",
    "certify_commuting",
    "rational_denom",
    "rational_denom_mat",
    "rational_denom_local",
]


@dataclass(frozen=True)
class GaussInt:
    """A Gaussian integer a + bi."""

    a: int
    b: int

    def __add__(self, o: "GaussInt") -> "GaussInt":
        return GaussInt(self.a + o.a, self.b + o.b)

    def __sub__(self, o: "GaussInt") -> "GaussInt":
        return GaussInt(self.a - o.a, self.b - o.b)

    def __mul__(self, o: "GaussInt") -> "GaussInt":
        return GaussInt(self.a * o.a - self.b * o.b, self.a * o.b + self.b * o.a)

    def __neg__(self) -> "GaussInt":
        return GaussInt(-self.a, -self.b)

    def conj(self) -> "GaussInt":
        return GaussInt(self.a, -self.b)

    def norm(self) -> int:
        return self.a * self.a + self.b * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def exact_div(self, o: "GaussInt") -> "GaussInt | None":
        """self / o if it lies in Z[i], else None."""
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError
        num = self * o.conj()
        if num.a % n or num.b % n:
            return None
        return GaussInt(num.a // n, num.b // n)

    def __pow__(self, e: int) -> "GaussInt":
        out = GaussInt(1, 0)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out


UNITS = (GaussInt(1, 0), GaussInt(-1, 0), GaussInt(0, 1), GaussInt(0, -1))


def _round_div(z: GaussInt, w: GaussInt) -> GaussInt:
    """Nearest-Gaussian-integer quotient (Euclidean division step)."""
    n = w.norm()
    num = z * w.conj()
    qa = (2 * num.a + n) // (2 * n) if num.a >= 0 else -((-2 * num.a + n) // (2 * n))
    qb = (2 * num.b + n) // (2 * n) if num.b >= 0 else -((-2 * num.b + n) // (2 * n))
    return GaussInt(qa, qb)


def gauss_gcd(z: GaussInt, w: GaussInt) -> GaussInt:
    while not w.is_zero():
        q = _round_div(z, w)
        z, w = w, z - q * w
    return z


def canonical_associate(z: GaussInt) -> GaussInt:
    """The associate with re > 0 and re >= |im|, im > 0 on the diagonal."""
    if z.is_zero():
        raise ValueError("zero has no canonical associate")
    for u in UNITS:
        c = z * u
        if c.a > 0 and c.a >= abs(c.b) and (c.a != abs(c.b) or c.b > 0):
            return c
    raise AssertionError("unreachable: every nonzero element has a canonical associate")


@dataclass(frozen=True)
class GaussPrime:
    """A prime of Z[i] in canonical associate form."""

    generator: GaussInt
    residue_size: int  # norm of the generator

    @staticmethod
    def make(g: GaussInt) -> "GaussPrime":
        g = canonical_associate(g)
        return GaussPrime(g, g.norm())


def _prime_above(p: int) -> list[GaussPrime]:
    """The primes of Z[i] over a rational prime p."""
    if p == 2:
        return [GaussPrime.make(GaussInt(1, 1))]
    if p % 4 == 3:
        return [GaussPrime.make(GaussInt(p, 0))]
    t = sqrt_mod(p - 1, p)
    g = gauss_gcd(GaussInt(p, 0), GaussInt(t, 1))
    pi = GaussPrime.make(g)
    return [pi, GaussPrime.make(pi.generator.conj())]


def ord_at(z: GaussInt, v: GaussPrime) -> int:
    """Valuation of a nonzero Gaussian integer at v."""
    if z.is_zero():
        raise ValueError("valuation of zero is undefined")
    k = 0
    while True:
        q = z.exact_div(v.generator)
        if q is None:
            return k
        z = q
        k += 1


def gaussian_factor(z: GaussInt) -> tuple[GaussInt, dict[GaussPrime, int]]:
    """Factor z into canonical primes: returns (unit, {prime: exponent})."""
    if z.is_zero():
        raise ValueError("cannot factor zero")
    factors: dict[GaussPrime, int] = {}
    rest = z
    for p in factorint(z.norm()):
        for v in _prime_above(p):
            e = 0
            while True:
                q = rest.exact_div(v.generator)
                if q is None:
                    break
                rest = q
                e += 1
            if e:
                factors[v] = e
    if not rest.is_unit():
        raise AssertionError(f"factorization left non-unit remainder {rest}")
    return rest, factors


@dataclass(frozen=True)
class GaussRat:
    """An element of Q(i)."""

    re: Fraction
    im: Fraction

    @staticmethod
    def make(re, im=0) -> "GaussRat":
        return GaussRat(Fraction(re), Fraction(im))

    def __add__(self, o: "GaussRat") -> "GaussRat":
        return GaussRat(self.re + o.re, self.im + o.im)

    def __sub__(self, o: "GaussRat") -> "GaussRat":
        return GaussRat(self.re - o.re, self.im - o.im)

    def __mul__(self, o: "GaussRat") -> "GaussRat":
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def __neg__(self) -> "GaussRat":
        return GaussRat(-self.re, -self.im)

    def conj(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared complex modulus: the normalized archimedean absolute value."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def inverse(self) -> "GaussRat":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, o: "GaussRat") -> "GaussRat":
        return self * o.inverse()

    def as_quotient(self) -> tuple[GaussInt, int]:
        """Write self = n / d with n in Z[i] and d a positive integer."""
        d = math.lcm(self.re.denominator, self.im.denominator)
        return GaussInt(int(self.re * d), int(self.im * d)), d


def ord_rat(x: GaussRat, v: GaussPrime) -> int:
    """Valuation of a nonzero element of Q(i) at v."""
    if x.is_zero():
        raise ValueError("valuation of zero is undefined")
    n, d = x.as_quotient()
    return ord_at(n, v) - ord_at(GaussInt(d, 0), v)


def denom_local(x: GaussRat, v: GaussPrime) -> int:
    """max(|x|_v, 1) = q_v^max(-ord_v(x), 0); zero counts as integral."""
    if x.is_zero():
        return 1
    k = ord_rat(x, v)
    return v.residue_size ** (-k) if k < 0 else 1


def _denominator_places(xs) -> list[GaussPrime]:
    """Primes of Z[i] over rational primes dividing some entry denominator."""
    rational = set()
    for x in xs:
        _, d = x.as_quotient()
        rational.update(factorint(d))
    places = []
    for p in sorted(rational):
        places.extend(_prime_above(p))
    return places


def denom(x: GaussRat) -> int:
    """Product of the local denominators over all finite places."""
    out = 1
    for v in _denominator_places([x]):
        out *= denom_local(x, v)
    return out


def product_formula_check(x: GaussRat) -> Fraction:
    """|x|^2 at the complex place times all finite absolute values.

    Equals 1 exactly for every nonzero x.
    """
    if x.is_zero():
        raise ValueError("product formula applies to nonzero elements")
    n, d = x.as_quotient()
    result = x.norm()
    _, nf = gaussian_factor(n)
    _, df = gaussian_factor(GaussInt(d, 0)) if d != 1 else (None, {})
    ords: dict[GaussPrime, int] = dict(nf)
    for v, e in df.items():
        ords[v] = ords.get(v, 0) - e
    for v, k in ords.items():
        result *= Fraction(1, v.residue_size) ** k
    return result


# ---------------------------------------------------------------------------
# 2x2 matrices


@dataclass(frozen=True)
class Mat2:
    """A 2x2 matrix over Q(i), entries row-major."""

    entries: tuple[GaussRat, GaussRat, GaussRat, GaussRat]

    @staticmethod
    def make(rows) -> "Mat2":
        flat = [x if isinstance(x, GaussRat) else GaussRat.make(x)
                for row in rows for x in row]
        if len(flat) != 4:
            raise ValueError("Mat2 needs a 2x2 array")
        return Mat2(tuple(flat))

    @staticmethod
    def identity() -> "Mat2":
        one, zero = GaussRat.make(1), GaussRat.make(0)
        return Mat2((one, zero, zero, one))

    def __add__(self, o: "Mat2") -> "Mat2":
        return Mat2(tuple(a + b for a, b in zip(self.entries, o.entries)))

    def __sub__(self, o: "Mat2") -> "Mat2":
        return Mat2(tuple(a - b for a, b in zip(self.entries, o.entries)))

    def __mul__(self, o: "Mat2") -> "Mat2":
        a, b, c, d = self.entries
        e, f, g, h = o.entries
        return Mat2((a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h))

    def det(self) -> GaussRat:
        a, b, c, d = self.entries
        return a * d - b * c

    def adjugate(self) -> "Mat2":
        a, b, c, d = self.entries
        return Mat2((d, -b, -c, a))

    def inverse(self) -> "Mat2":
        det = self.det()
        if det.is_zero():
            raise ZeroDivisionError("singular matrix")
        inv = det.inverse()
        return Mat2(tuple(inv * x for x in self.adjugate().entries))

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.entries)

    def max_arch_norm(self) -> Fraction:
        """Largest squared modulus over the entries."""
        return max(x.norm() for x in self.entries)


def denom_mat(m: Mat2) -> int:
    """Product over places of the per-place maximum of entry denominators.

    This is the fractional-ideal convention: per place take the worst
    entry, then multiply across places.
    """
    out = 1
    for v in _denominator_places(m.entries):
        out *= max(denom_local(x, v) for x in m.entries)
    return out


def commutator(a: Mat2, b: Mat2) -> Mat2:
    """ab - ba, exact."""
    return a * b - b * a


class CommutatorVerdict(enum.Enum):
    FORCED_ZERO = "forced_zero"
    IS_ZERO = "is_zero"
    NOT_FORCED = "not_forced"


class ArchBoundViolation(ValueError):
    """The asserted archimedean bound fails on the exact commutator."""


def certify_commuting(a: Mat2, b: Mat2, arch_bound: Fraction) -> CommutatorVerdict:
    """Commutator-forcing certificate via the product formula.

    arch_bound is an asserted upper bound on the squared modulus of every
    commutator entry.  If arch_bound * denom_mat([a,b]) < 1 then every
    entry x would violate denom(x) * |x|^2 >= 1 unless it is zero, so the
    commutator is forced to vanish.
    """
    arch_bound = Fraction(arch_bound)
    c = commutator(a, b)
    actual = c.max_arch_norm()
    if actual > arch_bound:
        raise ArchBoundViolation(
            f"asserted bound {arch_bound} is below the exact maximum {actual}"
        )
    d = denom_mat(c)
    if arch_bound * d < 1:
        if not c.is_zero():
            raise AssertionError(
                "product formula violated: bounded nonzero commutator survived the gate"
            )
        return CommutatorVerdict.FORCED_ZERO
    if c.is_zero():
        return CommutatorVerdict.IS_ZERO
    return CommutatorVerdict.NOT_FORCED


# ---------------------------------------------------------------------------
# The same machinery over Q, used for cross-checks in the simpler field.


def rational_denom_local(x: Fraction, p: int) -> int:
    x = Fraction(x)
    if x == 0:
        return 1
    d = x.denominator
    out = 1
    while d % p == 0:
        d //= p
        out *= p
    return out


def rational_denom(x: Fraction) -> int:
    """Over Q the product of local denominators is the reduced denominator."""
    return Fraction(x).denominator


def rational_denom_mat(rows) -> int:
    """Per-prime maximum over entries, multiplied: the lcm of denominators."""
    flat = [Fraction(x) for row in rows for x in row]
    if len(flat) != 4:
        raise ValueError("expected a 2x2 array")
    return math.lcm(*(x.denominator for x in flat))
