"""Harmonic trinomials ``f(z) = a z**n + b conj(z)**m + c`` and their normalizations."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from typing import Any, Mapping

import numpy as np

from .config import DEFAULT_TOLERANCES
from .errors import BadExponents, CoefficientRange, InvalidTrinomial, ZeroCoefficient

TWO_PI = 2.0 * math.pi

# above this exponent powers are taken in polar form
POLAR_POWER_THRESHOLD = 8


def canonical_arg(z: complex) -> float:
    """Argument of ``z`` in ``[0, 2*pi)``."""
    phi = math.atan2(z.imag, z.real)
    if phi < 0.0:
        phi += TWO_PI
    # atan2 can return -0.0 or a value that rounds up to exactly 2*pi
    if phi >= TWO_PI:
        phi -= TWO_PI
    return phi


def _power(z, k: int):
    """``z**k`` for scalars or arrays; polar form for large ``k``."""
    if k <= POLAR_POWER_THRESHOLD:
        return z**k
    if isinstance(z, np.ndarray):
        return np.abs(z) ** k * np.exp(1j * k * np.angle(z))
    return abs(z) ** k * cmath.exp(1j * k * cmath.phase(z))


@dataclass(frozen=True)
class HarmonicTrinomial:
    """The instance ``a z**n + b conj(z)**m + c`` with ``n > m >= 1`` and nonzero coefficients."""

    a: complex
    b: complex
    c: complex
    n: int
    m: int

    def __post_init__(self) -> None:
        for name in ("a", "b", "c"):
            value = getattr(self, name)
            try:
                value = complex(value)
            except (TypeError, ValueError) as exc:
                raise InvalidTrinomial(f"coefficient {name}={value!r} is not a number") from exc
            if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                raise InvalidTrinomial(f"coefficient {name} is not finite")
            if value == 0:
                raise ZeroCoefficient(f"coefficient {name} must be non-zero")
            object.__setattr__(self, name, value)
        for name in ("n", "m"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise BadExponents(f"exponent {name}={value!r} is not an integer")
            object.__setattr__(self, name, int(value))
        if not self.n > self.m >= 1:
            raise BadExponents(f"need n > m >= 1, got n={self.n}, m={self.m}")
        tol = DEFAULT_TOLERANCES
        for name in ("a", "b", "c"):
            mod = abs(getattr(self, name))
            if not tol.coeff_min <= mod <= tol.coeff_max:
                raise CoefficientRange(
                    f"|{name}|={mod:g} outside [{tol.coeff_min:g}, {tol.coeff_max:g}]"
                )

    @property
    def alpha(self) -> float:
        return canonical_arg(self.a)

    @property
    def beta(self) -> float:
        return canonical_arg(self.b)

    @property
    def gamma(self) -> float:
        return canonical_arg(self.c)

    @property
    def moduli(self) -> tuple[float, float, float]:
        return abs(self.a), abs(self.b), abs(self.c)

    def __call__(self, z):
        return evaluate(self, z)

    def scale(self, r):
        """Size ``|a| r**n + |b| r**m + |c|`` of the three terms on the circle of radius ``r``."""
        ma, mb, mc = self.moduli
        return ma * r**self.n + mb * r**self.m + mc

    def to_dict(self) -> dict[str, Any]:
        return {
            "a": [self.a.real, self.a.imag],
            "b": [self.b.real, self.b.imag],
            "c": [self.c.real, self.c.imag],
            "n": self.n,
            "m": self.m,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "HarmonicTrinomial":
        try:
            coeffs = {k: complex(*data[k]) for k in ("a", "b", "c")}
            return cls(n=data["n"], m=data["m"], **coeffs)
        except (KeyError, TypeError) as exc:
            raise InvalidTrinomial(f"malformed trinomial object: {exc}") from exc


@dataclass(frozen=True)
class NormalizedTrinomial(HarmonicTrinomial):
    """A trinomial with ``c > 0``; records the rotation and gcd that produced it.

    ``phase`` is the angle ``gamma`` that was divided out of every coefficient and
    ``gcd`` the factor by which the exponents were divided (1 if untouched).
    """

    phase: float = 0.0
    gcd: int = 1

    def __post_init__(self) -> None:
        super().__post_init__()
        if self.c.imag != 0.0 or self.c.real <= 0.0:
            raise InvalidTrinomial("normalized trinomial needs a positive real c")

    @property
    def coprime(self) -> bool:
        return math.gcd(self.n, self.m) == 1

    def as_plain(self) -> HarmonicTrinomial:
        return HarmonicTrinomial(self.a, self.b, self.c, self.n, self.m)


def new_trinomial(a: complex, b: complex, c: complex, n: int, m: int) -> HarmonicTrinomial:
    return HarmonicTrinomial(a, b, c, n, m)


def evaluate(T: HarmonicTrinomial, z):
    """Value of ``a z**n + b conj(z)**m + c`` at a scalar or array ``z``."""
    if isinstance(z, np.ndarray):
        zbar = np.conj(z)
    else:
        z = complex(z)
        zbar = z.conjugate()
    return T.a * _power(z, T.n) + T.b * _power(zbar, T.m) + T.c


def wirtinger(T: HarmonicTrinomial, z):
    """The pair ``(df/dz, df/dconj(z)) = (n a z**(n-1), m b conj(z)**(m-1))``."""
    if isinstance(z, np.ndarray):
        zbar = np.conj(z)
    else:
        z = complex(z)
        zbar = z.conjugate()
    dz = T.n * T.a * _power(z, T.n - 1)
    dzbar = T.m * T.b * (_power(zbar, T.m - 1) if T.m > 1 else 1.0)
    return dz, dzbar


def jacobian(T: HarmonicTrinomial, z):
    """Jacobian determinant of ``f`` as a map of the real plane.

    Equals ``|n a z**(n-1)|**2 - |m b conj(z)**(m-1)|**2``: positive where ``f``
    preserves orientation, negative where it reverses it.
    """
    dz, dzbar = wirtinger(T, z)
    return np.abs(dz) ** 2 - np.abs(dzbar) ** 2


def normalize_phase(T: HarmonicTrinomial) -> NormalizedTrinomial:
    """Rotate all coefficients by ``exp(-i*gamma)`` so that ``c`` becomes ``|c|``.

    The zero set is unchanged because the whole equation is multiplied by a unit.
    """
    if isinstance(T, NormalizedTrinomial):
        return T
    gamma = T.gamma
    if gamma == 0.0:
        return NormalizedTrinomial(T.a, T.b, abs(T.c), T.n, T.m, phase=0.0, gcd=1)
    unit = cmath.exp(-1j * gamma)
    return NormalizedTrinomial(T.a * unit, T.b * unit, abs(T.c), T.n, T.m, phase=gamma, gcd=1)


def coprime_reduce(T: HarmonicTrinomial) -> tuple[HarmonicTrinomial, int]:
    """Divide both exponents by ``d = gcd(n, m)``.

    Since ``f(z) = h(z**d)``, the counts obey ``count_f(r) = d * count_h(r**d)``.
    """
    d = math.gcd(T.n, T.m)
    if d == 1:
        return T, 1
    if isinstance(T, NormalizedTrinomial):
        return replace(T, n=T.n // d, m=T.m // d, gcd=T.gcd * d), d
    return replace(T, n=T.n // d, m=T.m // d), d


def normalize(T: HarmonicTrinomial) -> tuple[NormalizedTrinomial, int]:
    """Phase rotation followed by gcd reduction; returns the reduced instance and ``d``."""
    return coprime_reduce(normalize_phase(T))


def rotated(T: HarmonicTrinomial, unit: complex) -> HarmonicTrinomial:
    """The plain trinomial with every coefficient multiplied by ``unit``."""
    return HarmonicTrinomial(T.a * unit, T.b * unit, T.c * unit, T.n, T.m)
