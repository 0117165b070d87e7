"""Exact integer polynomials, rational functions and truncated power series.

Used as the carrier for Poincare series of loop space homology. Nothing
here uses floating point; rational functions are kept unreduced.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError

DEFAULT_CAP = 32


def _trim(coeffs) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPoly:
    """Polynomial in t with integer coefficients, lowest degree first."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(int(c) for c in self.coeffs))

    @classmethod
    def monomial(cls, deg: int, coeff: int = 1) -> "IntPoly":
        if deg < 0:
            raise InputError("negative exponent in polynomial")
        return cls((0,) * deg + (coeff,))

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def from_dims(cls, dims: dict[int, int]) -> "IntPoly":
        if not dims:
            return cls()
        out = [0] * (max(dims) + 1)
        for d, v in dims.items():
            out[d] += v
        return cls(tuple(out))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(tuple(self[i] + other[i] for i in range(n)))

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(tuple(c * other for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPoly":
        out = IntPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> "IntPoly":
        """Multiply by t^k; negative k divides, which must be exact."""
        if k >= 0:
            return IntPoly((0,) * k + self.coeffs)
        if any(self.coeffs[: -k]):
            raise InputError(f"polynomial is not divisible by t^{-k}")
        return IntPoly(self.coeffs[-k:])

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return head + "".join(f" {s} {b}" for s, b in terms[1:])


ONE = IntPoly.const(1)


@dataclass(frozen=True, eq=False)
class RationalFn:
    """``num / den`` with ``den(0) != 0``; equality is cross-multiplication."""

    num: IntPoly
    den: IntPoly = ONE

    def __post_init__(self):
        if self.den[0] == 0:
            raise InputError("denominator must have nonzero constant term")

    @classmethod
    def poly(cls, p: IntPoly) -> "RationalFn":
        return cls(p, ONE)

    def __add__(self, other: "RationalFn") -> "RationalFn":
        if self.den == other.den:
            return RationalFn(self.num + other.num, self.den)
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RationalFn":
        return RationalFn(-self.num, self.den)

    def __sub__(self, other: "RationalFn") -> "RationalFn":
        return self + (-other)

    def __mul__(self, other: "RationalFn") -> "RationalFn":
        return RationalFn(self.num * other.num, self.den * other.den)

    def inverse(self) -> "RationalFn":
        return RationalFn(self.den, self.num)

    def shift(self, k: int) -> "RationalFn":
        return RationalFn(self.num.shift(k), self.den)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def expand(self, cap: int = DEFAULT_CAP) -> "TruncatedSeries":
        return series_expand(self, cap)

    def __str__(self) -> str:
        if self.den == ONE:
            return str(self.num)
        return f"({self.num}) / ({self.den})"


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients ``a_0 .. a_cap`` of a power series; ``len == cap + 1``."""

    coeffs: tuple[int, ...]
    cap: int

    def __post_init__(self):
        if self.cap < 0 or len(self.coeffs) != self.cap + 1:
            raise InputError("series length must be cap + 1")

    @classmethod
    def of(cls, coeffs, cap: int) -> "TruncatedSeries":
        c = list(coeffs)[: cap + 1]
        return cls(tuple(c) + (0,) * (cap + 1 - len(c)), cap)

    def _check(self, other: "TruncatedSeries"):
        if self.cap != other.cap:
            raise InputError(f"series caps differ: {self.cap} vs {other.cap}")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.cap)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        n = self.cap + 1
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(n - i):
                    out[i + j] += a * other.coeffs[j]
        return TruncatedSeries(tuple(out), self.cap)

    def truncate(self, cap: int) -> "TruncatedSeries":
        if cap > self.cap:
            raise InputError("cannot extend a truncated series")
        return TruncatedSeries(self.coeffs[: cap + 1], cap)

    def first_difference(self, other: "TruncatedSeries") -> int | None:
        self._check(other)
        for i, (a, b) in enumerate(zip(self.coeffs, other.coeffs)):
            if a != b:
                return i
        return None

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i]

    def __str__(self) -> str:
        return "[" + ", ".join(map(str, self.coeffs)) + "]"


def series_expand(r: RationalFn, cap: int = DEFAULT_CAP) -> TruncatedSeries:
    """Exact power series of ``r`` through ``t^cap``; needs ``den(0) = +-1``."""
    if cap < 0:
        raise InputError("cap must be >= 0")
    d0 = r.den[0]
    if d0 not in (1, -1):
        raise InputError(f"denominator constant term {d0} is not invertible over Z")
    den = r.den.coeffs
    out = []
    for n in range(cap + 1):
        acc = r.num[n]
        for j in range(1, min(n, len(den) - 1) + 1):
            acc -= den[j] * out[n - j]
        out.append(acc * d0)
    return TruncatedSeries(tuple(out), cap)
