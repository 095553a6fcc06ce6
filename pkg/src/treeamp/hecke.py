"""Spherical Hecke algebra on the (p+1)-regular tree.

Elements are finitely supported integer combinations of the radius-2j
double-coset indicators.  Convolution is computed from the tree path
counts, so every identity here is exact integer arithmetic.  Global
(multi-prime) elements are indexed by support points: finitely
supported maps prime -> even radius, the empty map being the identity
coset.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from . import tree

__all__ = [
    "MAX_RADIUS",
    "LocalHeckeElement",
    "GlobalHeckeElement",
    "EigenvalueSequence",
    "identity",
    "basic",
    "convolve",
    "support_size",
    "total_mass",
    "off_origin_max",
    "eigenvalue_sequence",
    "spectral_value",
    "global_assemble",
    "global_identity",
    "subtract_identity",
    "norm_inf",
]

# Input support radii beyond this are rejected outright.
MAX_RADIUS = 8

SupportPoint = tuple[tuple[int, int], ...]  # sorted ((prime, radius), ...)


def _check_even_radius(r: int) -> None:
    if r < 0 or r % 2 != 0:
        raise ValueError(f"radius must be even and nonnegative, got {r}")


@dataclass(frozen=True)
class LocalHeckeElement:
    """Finitely supported function on even radii at a single prime."""

    prime: int
    coeffs: tuple[tuple[int, int], ...]  # sorted (radius, coefficient), coefficient != 0

    @staticmethod
    def from_dict(p: int, coeffs: dict[int, int]) -> "LocalHeckeElement":
        for r in coeffs:
            _check_even_radius(r)
        items = tuple(sorted((r, c) for r, c in coeffs.items() if c != 0))
        return LocalHeckeElement(p, items)

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def __getitem__(self, r: int) -> int:
        return dict(self.coeffs).get(r, 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def max_radius(self) -> int:
        return max((r for r, _ in self.coeffs), default=0)


def identity(p: int) -> LocalHeckeElement:
    """The identity element: the radius-0 indicator."""
    return LocalHeckeElement.from_dict(p, {0: 1})


def basic(p: int, j: int) -> LocalHeckeElement:
    """The radius-2j double-coset indicator."""
    if j < 1:
        raise ValueError("j must be >= 1; use identity() for j = 0")
    if 2 * j > MAX_RADIUS:
        raise ValueError(f"radius 2j={2 * j} exceeds the cap {MAX_RADIUS}")
    return LocalHeckeElement.from_dict(p, {2 * j: 1})


def support_size(f: LocalHeckeElement) -> int:
    """Number of tree vertices in the support (coefficients ignored)."""
    return sum(tree.sphere_size(f.prime, r) for r, _ in f.coeffs)


def total_mass(f: LocalHeckeElement):
    """Sum of coefficient * sphere size over the support."""
    return sum(c * tree.sphere_size(f.prime, r) for r, c in f.coeffs)


def off_origin_max(f: LocalHeckeElement) -> int:
    """Largest absolute coefficient at radius > 0."""
    return max((abs(c) for r, c in f.coeffs if r > 0), default=0)


def convolve(f: LocalHeckeElement, g: LocalHeckeElement) -> LocalHeckeElement:
    """Convolution product, bilinear in the structure constants."""
    if f.prime != g.prime:
        raise ValueError(f"prime mismatch: {f.prime} vs {g.prime}")
    p = f.prime
    for h in (f, g):
        if h.max_radius() > MAX_RADIUS:
            raise ValueError(f"input radius {h.max_radius()} exceeds the cap {MAX_RADIUS}")
    out: dict[int, int] = {}
    for a, ca in f.coeffs:
        for b, cb in g.coeffs:
            w = ca * cb
            for r in range(0, a + b + 1, 2):
                n = tree.convolution_count(p, a, b, r)
                if n:
                    out[r] = out.get(r, 0) + w * n
    return LocalHeckeElement.from_dict(p, out)


@dataclass(frozen=True)
class EigenvalueSequence:
    """Eigenvalues of the radius-2j operators, lambda[0] = 1."""

    prime: int
    lambdas: tuple

    def value(self, j: int):
        if j >= len(self.lambdas):
            raise ValueError(f"sequence at p={self.prime} too short for j={j}")
        return self.lambdas[j]

    def max_j(self) -> int:
        return len(self.lambdas) - 1


def eigenvalue_sequence(p: int, lambda_p, max_j: int) -> EigenvalueSequence:
    """Extend a seed eigenvalue of the radius-2 operator up to j = max_j.

    Multiplicativity forces lambda(radius 2) * lambda(radius 2j) to
    equal the eigenvalue of their convolution; the top structure
    constant is 1, so each new term is solved triangularly.  Rational
    seeds stay exact.
    """
    if max_j < 2:
        raise ValueError("max_j must be >= 2")
    if isinstance(lambda_p, Rational) and not isinstance(lambda_p, float):
        lam = [Fraction(1), Fraction(lambda_p)]
    else:
        lam = [1.0, float(lambda_p)]
    for j in range(1, max_j):
        # lambda_p * lam[j] = sum_k N(2, 2j, 2k) lam[k], top term k = j+1 has N = 1
        acc = lam[1] * lam[j]
        for k in range(j + 1):
            n = tree.convolution_count(p, 2, 2 * j, 2 * k)
            if n:
                acc -= n * lam[k]
        lam.append(acc)
    return EigenvalueSequence(p, tuple(lam))


# ---------------------------------------------------------------------------
# Global (multi-prime) elements


@dataclass(frozen=True)
class GlobalHeckeElement:
    """Finitely supported integer function on support points."""

    coeffs: tuple[tuple[SupportPoint, int], ...]

    @staticmethod
    def from_dict(coeffs: dict[SupportPoint, int]) -> "GlobalHeckeElement":
        items = []
        for point, c in coeffs.items():
            point = tuple(sorted(point))
            primes = [p for p, _ in point]
            if len(set(primes)) != len(primes):
                raise ValueError(f"support point repeats a prime: {point}")
            for _, r in point:
                _check_even_radius(r)
                if r == 0:
                    raise ValueError("support points must not carry radius 0 entries")
            if c != 0:
                items.append((point, c))
        return GlobalHeckeElement(tuple(sorted(items)))

    def as_dict(self) -> dict[SupportPoint, int]:
        return dict(self.coeffs)

    def identity_value(self) -> int:
        return self.as_dict().get((), 0)

    def primes(self) -> set[int]:
        return {p for point, _ in self.coeffs for p, _ in point}

    def is_zero(self) -> bool:
        return not self.coeffs


def global_identity() -> GlobalHeckeElement:
    return GlobalHeckeElement.from_dict({(): 1})


def embed_local(f: LocalHeckeElement) -> GlobalHeckeElement:
    """View a local element as a global one at its prime."""
    out: dict[SupportPoint, int] = {}
    for r, c in f.coeffs:
        point: SupportPoint = () if r == 0 else ((f.prime, r),)
        out[point] = out.get(point, 0) + c
    return GlobalHeckeElement.from_dict(out)


def global_assemble(parts: dict[int, tuple[LocalHeckeElement, int]]) -> GlobalHeckeElement:
    """Expand (sum_p zeta_p h_p) * (sum_p zeta_p h_p)^* in the support basis.

    Each h_p must be a basic operator at its prime and zeta_p a sign.
    Same-prime terms contribute zeta_p^2 (h_p * h_p); cross terms
    contribute 2 zeta_p zeta_q on the product of the two spheres.
    """
    primes = sorted(parts)
    out: dict[SupportPoint, int] = {}
    for p in primes:
        h, zeta = parts[p]
        if h.prime != p:
            raise ValueError(f"element at key {p} has prime {h.prime}")
        if zeta not in (1, -1):
            raise ValueError(f"phase must be +1 or -1, got {zeta}")
        if len(h.coeffs) != 1 or h.coeffs[0][1] != 1 or h.coeffs[0][0] == 0:
            raise ValueError(f"element at prime {p} is not a basic operator")
        square = convolve(h, h)  # zeta_p^2 = 1
        for r, c in square.coeffs:
            point: SupportPoint = () if r == 0 else ((p, r),)
            out[point] = out.get(point, 0) + c
    for i, p in enumerate(primes):
        hp, zp = parts[p]
        rp = hp.coeffs[0][0]
        for q in primes[i + 1:]:
            hq, zq = parts[q]
            rq = hq.coeffs[0][0]
            point = tuple(sorted(((p, rp), (q, rq))))
            out[point] = out.get(point, 0) + 2 * zp * zq
    return GlobalHeckeElement.from_dict(out)


def subtract_identity(t1: GlobalHeckeElement) -> GlobalHeckeElement:
    """Remove the identity-coset value: t1 - t1(1) * delta."""
    out = t1.as_dict()
    out.pop((), None)
    return GlobalHeckeElement.from_dict(out)


def norm_inf(t: GlobalHeckeElement) -> int:
    """Largest absolute coefficient away from the identity coset."""
    return max((abs(c) for point, c in t.coeffs if point), default=0)


def spectral_value(f, spectra: dict[int, EigenvalueSequence]):
    """Evaluate an element against per-prime eigenvalue sequences.

    Linear in the element; across distinct primes the eigenvalue of a
    product support point is the product of the local eigenvalues.
    """
    if isinstance(f, LocalHeckeElement):
        if f.prime not in spectra:
            raise KeyError(f"no eigenvalue sequence for prime {f.prime}")
        seq = spectra[f.prime]
        return sum(c * seq.value(r // 2) for r, c in f.coeffs)
    total = 0
    for point, c in f.coeffs:
        term = c
        for p, r in point:
            if p not in spectra:
                raise KeyError(f"no eigenvalue sequence for prime {p}")
            term = term * spectra[p].value(r // 2)
        total += term
    return total
