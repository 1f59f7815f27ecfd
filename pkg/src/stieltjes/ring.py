"""Exact dense polynomials and truncated power series over Z, Z/mZ and Q.

Coefficients live in numpy arrays.  Residues use ``int64`` (with an object
fallback for moduli whose products would overflow), integers and rationals
use object arrays of Python ``int`` / ``Fraction`` so nothing ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable

import numpy as np

__all__ = [
    "Domain",
    "ZZ",
    "QQ",
    "Zmod",
    "Poly",
    "Series",
    "DomainError",
    "poly_arith",
    "series_inverse",
    "series_sqrt_exact",
    "substitute_power",
    "negate_argument",
    "series_to_text",
    "series_from_text",
    "poly_to_text",
    "poly_from_text",
]

_INT64_SAFE = 2**62


class DomainError(ValueError):
    """Operands live in different coefficient domains, or a value is invalid."""


@dataclass(frozen=True)
class Domain:
    kind: str
    m: int | None = None

    def __post_init__(self):
        if self.kind not in ("integers", "residues", "rationals"):
            raise DomainError(f"unknown coefficient domain {self.kind!r}")
        if self.kind == "residues":
            if self.m is None or self.m < 2:
                raise DomainError("residue domain needs a modulus m >= 2")
        elif self.m is not None:
            raise DomainError(f"{self.kind} take no modulus")

    def __str__(self):
        if self.kind == "residues":
            return f"Z/{self.m}Z"
        return {"integers": "Z", "rationals": "Q"}[self.kind]

    @property
    def is_residue(self) -> bool:
        return self.kind == "residues"

    @property
    def _native(self) -> bool:
        # int64 storage only when every partial convolution sum fits
        return self.is_residue and self.m * self.m < 2**31

    def array(self, values: Iterable) -> np.ndarray:
        """Coerce ``values`` into a normalized coefficient array."""
        vals = list(values) if not isinstance(values, np.ndarray) else values
        if self.kind == "integers":
            out = np.empty(len(vals), dtype=object)
            for i, v in enumerate(vals):
                out[i] = _as_int(v)
            return out
        if self.kind == "rationals":
            out = np.empty(len(vals), dtype=object)
            for i, v in enumerate(vals):
                out[i] = Fraction(v)
            return out
        if self._native:
            if isinstance(vals, np.ndarray) and vals.dtype != object:
                return np.mod(vals.astype(np.int64), self.m)
            return np.array([_as_int(v) % self.m for v in vals], dtype=np.int64)
        out = np.empty(len(vals), dtype=object)
        for i, v in enumerate(vals):
            out[i] = _as_int(v) % self.m
        return out

    def zeros(self, n: int) -> np.ndarray:
        if self._native:
            return np.zeros(n, dtype=np.int64)
        out = np.empty(n, dtype=object)
        out[:] = Fraction(0) if self.kind == "rationals" else 0
        return out

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        if self.is_residue:
            return np.mod(arr, self.m)
        return arr

    def convolve(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if len(a) == 0 or len(b) == 0:
            return self.zeros(0)
        if self._native and min(len(a), len(b)) * self.m * self.m >= _INT64_SAFE:
            a, b = a.astype(object), b.astype(object)
            return self.array(np.convolve(a, b))
        return self.normalize(np.convolve(a, b))

    def unit_inverse(self, c) -> object:
        """Inverse of ``c`` in the domain, or raise if ``c`` is not a unit."""
        if self.kind == "integers":
            if c in (1, -1):
                return int(c)
        elif self.kind == "rationals":
            if c != 0:
                return 1 / Fraction(c)
        else:
            c = int(c) % self.m
            if gcd(c, self.m) == 1:
                return pow(c, -1, self.m)
        raise DomainError(f"{c} is not a unit in {self}")

    def reduce(self, arr: np.ndarray, source: "Domain") -> np.ndarray:
        """Map coefficients from ``source`` into this domain."""
        if source == self:
            return arr
        if self.kind == "rationals":
            return self.array(arr)
        if source.kind == "rationals":
            vals = []
            for v in arr:
                v = Fraction(v)
                if self.kind == "integers":
                    if v.denominator != 1:
                        raise DomainError(f"{v} is not an integer")
                    vals.append(v.numerator)
                else:
                    vals.append(v.numerator * pow(v.denominator, -1, self.m))
            return self.array(vals)
        if source.is_residue and self.is_residue and source.m % self.m != 0:
            raise DomainError(f"cannot reduce {source} to {self}")
        if source.is_residue and self.kind == "integers":
            raise DomainError(f"cannot lift {source} to {self}")
        if self._native and source._native:
            return np.mod(arr, self.m)
        return self.array([int(v) for v in arr])


ZZ = Domain("integers")
QQ = Domain("rationals")


def Zmod(m: int) -> Domain:
    return Domain("residues", m)


def _as_int(v) -> int:
    if isinstance(v, Fraction):
        if v.denominator != 1:
            raise DomainError(f"{v} is not an integer")
        return v.numerator
    if isinstance(v, (int, np.integer)):
        return int(v)
    raise DomainError(f"{v!r} is not an integer")


def _pad(arr: np.ndarray, n: int, domain: Domain) -> np.ndarray:
    if len(arr) >= n:
        return arr
    out = domain.zeros(n)
    out[: len(arr)] = arr
    return out


def _trim(arr: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(arr != 0)
    return arr[: nz[-1] + 1] if len(nz) else arr[:0]


class Poly:
    """Dense polynomial, canonical form (no trailing zeros).

    >>> p = Poly([1, 1])
    >>> p * p
    Poly([1, 2, 1], Z)
    """

    __slots__ = ("domain", "coeffs")

    def __init__(self, coeffs: Iterable = (), domain: Domain = ZZ, *, _raw: bool = False):
        self.domain = domain
        arr = coeffs if _raw else domain.array(coeffs)
        arr = _trim(arr)
        arr.flags.writeable = False
        self.coeffs = arr

    @classmethod
    def monomial(cls, exponent: int, coeff=1, domain: Domain = ZZ) -> "Poly":
        arr = domain.zeros(exponent + 1)
        arr[exponent] = coeff
        return cls(domain.normalize(arr), domain, _raw=True)

    @classmethod
    def zero(cls, domain: Domain = ZZ) -> "Poly":
        return cls((), domain)

    @classmethod
    def one(cls, domain: Domain = ZZ) -> "Poly":
        return cls((1,), domain)

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __call__(self, x):
        acc = 0
        for c in self.coeffs[::-1]:
            acc = acc * x + c
        if self.domain.is_residue:
            acc %= self.domain.m
        return acc

    def _check(self, other: "Poly"):
        if not isinstance(other, Poly):
            return NotImplemented
        if other.domain != self.domain:
            raise DomainError(f"domain mismatch: {self.domain} vs {other.domain}")
        return None

    def _coerce(self, other):
        if isinstance(other, (int, np.integer, Fraction)):
            return Poly((other,), self.domain)
        self._check(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        d = self.domain
        s = _pad(self.coeffs, n, d) + _pad(other.coeffs, n, d)
        return Poly(d.normalize(s), d, _raw=True)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.domain.normalize(-self.coeffs), self.domain, _raw=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, np.integer, Fraction)):
            return Poly(self.domain.normalize(self.coeffs * other), self.domain, _raw=True)
        self._check(other)
        return Poly(self.domain.convolve(self.coeffs, other.coeffs), self.domain, _raw=True)

    __rmul__ = __mul__

    def shift(self, k: int) -> "Poly":
        """Multiply by ``x**k``."""
        if self.is_zero():
            return self
        out = self.domain.zeros(len(self.coeffs) + k)
        out[k:] = self.coeffs
        return Poly(out, self.domain, _raw=True)

    def reduce(self, domain: Domain) -> "Poly":
        return Poly(domain.reduce(self.coeffs, self.domain), domain, _raw=True)

    def to_series(self, order: int) -> "Series":
        return Series(self.coeffs[: order + 1], order, self.domain)

    def tolist(self) -> list:
        return list(self.coeffs.tolist())

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly((other,), self.domain)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.domain == other.domain and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.domain, tuple(self.tolist())))

    def __repr__(self):
        return f"Poly({self.tolist()}, {self.domain})"


class Series:
    """Power series truncated after the coefficient of ``x**order``."""

    __slots__ = ("domain", "order", "coeffs")

    def __init__(self, coeffs: Iterable, order: int, domain: Domain = ZZ, *, _raw: bool = False):
        if order < 0:
            raise ValueError("series order must be >= 0")
        arr = coeffs if _raw else domain.array(coeffs)
        if len(arr) > order + 1:
            arr = arr[: order + 1]
        arr = _pad(arr, order + 1, domain)
        arr.flags.writeable = False
        self.domain = domain
        self.order = order
        self.coeffs = arr

    @classmethod
    def from_terms(cls, terms: dict[int, object], order: int, domain: Domain = ZZ) -> "Series":
        arr = domain.zeros(order + 1)
        for e, c in terms.items():
            if e <= order:
                arr[e] = arr[e] + c
        return cls(domain.normalize(arr), order, domain, _raw=True)

    @classmethod
    def one(cls, order: int, domain: Domain = ZZ) -> "Series":
        return cls.from_terms({0: 1}, order, domain)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return self.order + 1

    def _binary(self, other):
        if isinstance(other, Poly):
            other = other.to_series(self.order)
        elif isinstance(other, (int, np.integer, Fraction)):
            other = Series((other,), self.order, self.domain)
        if not isinstance(other, Series):
            return None
        if other.domain != self.domain:
            raise DomainError(f"domain mismatch: {self.domain} vs {other.domain}")
        n = min(self.order, other.order)
        return n, self.coeffs[: n + 1], other.coeffs[: n + 1]

    def __add__(self, other):
        b = self._binary(other)
        if b is None:
            return NotImplemented
        n, x, y = b
        return Series(self.domain.normalize(x + y), n, self.domain, _raw=True)

    __radd__ = __add__

    def __neg__(self):
        return Series(self.domain.normalize(-self.coeffs), self.order, self.domain, _raw=True)

    def __sub__(self, other):
        b = self._binary(other)
        if b is None:
            return NotImplemented
        n, x, y = b
        return Series(self.domain.normalize(x - y), n, self.domain, _raw=True)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, np.integer, Fraction)):
            return Series(self.domain.normalize(self.coeffs * other), self.order, self.domain, _raw=True)
        b = self._binary(other)
        if b is None:
            return NotImplemented
        n, x, y = b
        return Series(self.domain.convolve(x, y)[: n + 1], n, self.domain, _raw=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers need series_inverse")
        out = Series.one(self.order, self.domain)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "Series":
        """Multiply by ``x**k``, keeping the order."""
        out = self.domain.zeros(self.order + 1)
        if k <= self.order:
            out[k:] = self.coeffs[: self.order + 1 - k]
        return Series(out, self.order, self.domain, _raw=True)

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return Series(self.coeffs[: order + 1], order, self.domain, _raw=True)

    def reduce(self, domain: Domain) -> "Series":
        return Series(domain.reduce(self.coeffs, self.domain), self.order, domain, _raw=True)

    def is_integral(self) -> bool:
        if self.domain.kind != "rationals":
            return True
        return all(Fraction(c).denominator == 1 for c in self.coeffs)

    def tolist(self) -> list:
        return list(self.coeffs.tolist())

    def first_difference(self, other: "Series") -> int | None:
        """Lowest exponent where the two series differ, on their common order."""
        n = min(self.order, other.order)
        diff = np.flatnonzero(self.coeffs[: n + 1] != other.coeffs[: n + 1])
        return int(diff[0]) if len(diff) else None

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.order == other.order
            and np.array_equal(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash((self.domain, self.order, tuple(self.tolist())))

    def __repr__(self):
        shown = self.tolist()
        if len(shown) > 12:
            shown = shown[:12] + ["..."]
        return f"Series({shown}, order={self.order}, {self.domain})"


def poly_arith(lhs: Poly, rhs: Poly, op: str) -> Poly:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown polynomial operation {op!r}")


def series_inverse(s: Series) -> Series:
    """Multiplicative inverse by the coefficient recurrence.

    Needs a unit constant term; raises :class:`DomainError` otherwise.
    """
    d = s.domain
    u = d.unit_inverse(s.coeffs[0])
    n = s.order
    out = d.zeros(n + 1)
    out[0] = u
    a = s.coeffs
    for k in range(1, n + 1):
        acc = np.dot(a[1 : k + 1], out[k - 1 :: -1])
        v = -acc * u
        if d.is_residue:
            v = int(v) % d.m
        out[k] = v
    return Series(out, n, d, _raw=True)


def series_sqrt_exact(s: Series) -> tuple[Series, bool]:
    """Square root with constant term 1, over the rationals.

    Returns ``(root, integral)``.  ``integral`` tells whether every
    coefficient of the root is an integer.
    """
    if s.domain.is_residue:
        raise DomainError("square roots are taken over Z or Q, not residues")
    if s.coeffs[0] != 1:
        raise DomainError(f"constant term must be 1, got {s.coeffs[0]}")
    n = s.order
    a = s.coeffs
    root = _sqrt_integer(a, n) if s.domain.kind == "integers" else None
    if root is None:
        root = np.empty(n + 1, dtype=object)
        root[0] = Fraction(1)
        for k in range(1, n + 1):
            acc = np.dot(root[1:k], root[k - 1 : 0 : -1]) if k > 1 else 0
            root[k] = (Fraction(a[k]) - acc) / 2
        out = Series(root, n, QQ, _raw=True)
        return out, out.is_integral()
    return Series(QQ.array(root), n, QQ, _raw=True), True


def _sqrt_integer(a: np.ndarray, n: int):
    # same recursion kept in Z; bail out on the first odd numerator
    root = np.empty(n + 1, dtype=object)
    root[0] = 1
    for k in range(1, n + 1):
        acc = np.dot(root[1:k], root[k - 1 : 0 : -1]) if k > 1 else 0
        num = int(a[k]) - acc
        if num % 2:
            return None
        root[k] = num // 2
    return root


def substitute_power(s: Series | Poly, k: int):
    """``s(x**k)``; a series keeps its original order."""
    if k < 1:
        raise ValueError("substitution power must be >= 1")
    d = s.domain
    if isinstance(s, Poly):
        if s.is_zero():
            return s
        out = d.zeros(k * s.degree + 1)
        out[::k] = s.coeffs
        return Poly(out, d, _raw=True)
    out = d.zeros(s.order + 1)
    kept = s.coeffs[: s.order // k + 1]
    out[: k * (len(kept) - 1) + 1 : k] = kept
    return Series(out, s.order, d, _raw=True)


def negate_argument(s: Series | Poly):
    """``s(-x)``: flip the sign of every odd coefficient."""
    d = s.domain
    c = s.coeffs.copy()
    c[1::2] = -c[1::2]
    c = d.normalize(c)
    if isinstance(s, Poly):
        return Poly(c, d, _raw=True)
    return Series(c, s.order, d, _raw=True)


# -- text interchange -------------------------------------------------------

def _fmt(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def _parse_values(text: str, domain: Domain | None):
    toks = text.split()
    if domain is None:
        domain = QQ if any("/" in t for t in toks) else ZZ
    vals = [Fraction(t) if "/" in t else int(t) for t in toks]
    return vals, domain


def series_to_text(s: Series) -> str:
    return f"order={s.order}; " + " ".join(_fmt(c) for c in s.coeffs)


def series_from_text(line: str, domain: Domain | None = None) -> Series:
    head, _, body = line.strip().partition(";")
    key, _, val = head.partition("=")
    if key.strip() != "order":
        raise ValueError(f"not a serialized series: {line!r}")
    order = int(val)
    vals, domain = _parse_values(body, domain)
    if len(vals) != order + 1:
        raise ValueError(f"expected {order + 1} coefficients, got {len(vals)}")
    return Series(vals, order, domain)


def poly_to_text(p: Poly) -> str:
    return f"degree={p.degree}; " + " ".join(_fmt(c) for c in p.coeffs)


def poly_from_text(line: str, domain: Domain | None = None) -> Poly:
    head, _, body = line.strip().partition(";")
    key, _, val = head.partition("=")
    if key.strip() != "degree":
        raise ValueError(f"not a serialized polynomial: {line!r}")
    vals, domain = _parse_values(body, domain)
    if len(vals) != int(val) + 1:
        raise ValueError(f"expected {int(val) + 1} coefficients, got {len(vals)}")
    return Poly(vals, domain)

