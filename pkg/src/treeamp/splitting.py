"""Complete-splitting filter for rational primes.

A monic integer polynomial f splits completely mod p exactly when
x^p = x in Z[x]/(f, p) (equivalently gcd(x^p - x, f) = f mod p, since
x^p - x is squarefree).  Primes dividing disc(f) are treated as bad and
never reported as split.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import Poly, Symbol, discriminant

__all__ = [
    "IntPoly",
    "parse_poly",
    "splits_completely",
    "split_primes_in",
    "empirical_density",
    "is_prime",
    "primes_in",
    "sieve",
]

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; the witness set covers n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
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


def sieve(limit: int) -> bytearray:
    """Bit-per-byte primality table for 0..limit inclusive."""
    table = bytearray([1]) * (limit + 1)
    table[0:2] = b"\x00\x00"
    for i in range(2, int(limit ** 0.5) + 1):
        if table[i]:
            table[i * i:: i] = bytearray(len(table[i * i:: i]))
    return table


def primes_in(lo: int, hi: int) -> list[int]:
    """Primes in [lo, hi], ascending."""
    if hi < lo:
        return []
    if hi <= 10 ** 7:
        table = sieve(hi)
        return [n for n in range(max(lo, 2), hi + 1) if table[n]]
    return [n for n in range(max(lo, 2), hi + 1) if is_prime(n)]


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, coefficients from the constant term up."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs or self.coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")
        if len(self.coeffs) < 2:
            raise ValueError("degree must be >= 1")

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    def discriminant(self) -> int:
        return _discriminant(self.coeffs)

    def __str__(self) -> str:
        parts = []
        for i in range(self.degree(), -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            term = "x" if i == 1 else f"x^{i}" if i > 1 else ""
            mag = abs(c)
            body = term if (mag == 1 and term) else f"{mag}{term}" if term else f"{mag}"
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


@lru_cache(maxsize=None)
def _discriminant(coeffs: tuple[int, ...]) -> int:
    x = Symbol("x")
    expr = sum(c * x ** i for i, c in enumerate(coeffs))
    return int(discriminant(Poly(expr, x)))


def parse_poly(text: str) -> IntPoly:
    """Parse ASCII polynomials like "x^3-2" or "2x^2 + x - 5"."""
    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise ValueError("empty polynomial")
    s = s.replace("-", "+-")
    if s.startswith("+"):
        s = s[1:]
    coeffs: dict[int, int] = {}
    for term in s.split("+"):
        if not term:
            raise ValueError(f"malformed polynomial {text!r}")
        neg = term.startswith("-")
        if neg:
            term = term[1:]
        if "x" in term:
            head, _, tail = term.partition("x")
            coef = int(head) if head else 1
            if tail.startswith("^"):
                power = int(tail[1:])
            elif tail == "":
                power = 1
            else:
                raise ValueError(f"malformed term in {text!r}")
        else:
            coef = int(term)
            power = 0
        coeffs[power] = coeffs.get(power, 0) + (-coef if neg else coef)
    deg = max((k for k, v in coeffs.items() if v != 0), default=0)
    return IntPoly(tuple(coeffs.get(i, 0) for i in range(deg + 1)))


def _frobenius_fixes_x(coeffs: tuple[int, ...], p: int) -> bool:
    """True iff x^p = x in F_p[x]/(f), for monic f of degree >= 2."""
    deg = len(coeffs) - 1
    f = [c % p for c in coeffs]
    # power = x, square-and-multiply on the exponent p
    power = [0, 1] + [0] * (deg - 2)
    base = power[:]
    acc = [1] + [0] * (deg - 1)
    e = p
    while e:
        if e & 1:
            acc = _polmulmod(acc, base, f, p, deg)
        e >>= 1
        if e:
            base = _polmulmod(base, base, f, p, deg)
    return acc[1] == 1 % p and all(c == 0 for i, c in enumerate(acc) if i != 1)


def _polmulmod(u: list[int], v: list[int], f: list[int], p: int, deg: int) -> list[int]:
    prod = [0] * (2 * deg - 1)
    for i, ui in enumerate(u):
        if ui:
            for j, vj in enumerate(v):
                if vj:
                    prod[i + j] = (prod[i + j] + ui * vj) % p
    for k in range(2 * deg - 2, deg - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for j in range(deg):
                prod[k - deg + j] = (prod[k - deg + j] - c * f[j]) % p
    return prod[:deg]


def splits_completely(f: IntPoly, p: int) -> bool:
    """True iff f factors into deg(f) distinct linear factors mod p.

    Bad primes (dividing disc(f)) and non-primes are rejected as False.
    """
    if not f.is_monic():
        raise ValueError("splitting test requires a monic polynomial")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if f.degree() == 1:
        return True
    if f.discriminant() % p == 0:
        return False
    return _frobenius_fixes_x(f.coeffs, p)


def split_primes_in(f: IntPoly, lo: int, hi: int) -> list[int]:
    """All primes in [lo, hi] where f splits completely, ascending."""
    if lo > hi:
        raise ValueError("empty range")
    disc = f.discriminant()
    if f.degree() == 1:
        return primes_in(lo, hi)
    return [p for p in primes_in(lo, hi)
            if disc % p != 0 and _frobenius_fixes_x(f.coeffs, p)]


def empirical_density(f: IntPoly, limit: int) -> Fraction:
    """Fraction of primes up to limit where f splits completely."""
    if limit < 100:
        raise ValueError("limit must be >= 100")
    if f.degree() == 1:
        return Fraction(1)
    disc = f.discriminant()
    total = 0
    split = 0
    for p in primes_in(2, limit):
        total += 1
        if disc % p != 0 and _frobenius_fixes_x(f.coeffs, p):
            split += 1
    return Fraction(split, total)
