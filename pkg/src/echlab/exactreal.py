"""Exact arithmetic for rationals and quadratic irrationals.

Every angle-like constant in this package is either a rational num/den or a
number (p + q*sqrt(d))/r with arbitrary-precision integers and squarefree
d >= 2.  Floors of integer multiples, comparisons (including across
different radicands), and continued-fraction expansions are decided by
integer arithmetic alone, with math.isqrt supplying the certificates.  No
floating point enters any code path that affects a result; approx_float()
exists for display only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor as _floor_frac
from math import gcd, isqrt
from typing import Iterable, Mapping, Sequence, Union

from .errors import MixedFieldError

RationalLike = Union[int, Fraction]

# Trial-division bound for extracting square factors of the radicand.
# Complete for d < 1e12; larger d with a prime-square factor beyond the
# bound is accepted as-is (values stay correct, canonical equality may not).
_SQUAREFREE_TRIAL_LIMIT = 1_000_000


def _sign(n: int) -> int:
    return (n > 0) - (n < 0)


def _squarefree_split(n: int) -> tuple[int, int]:
    """n >= 1 -> (s, f) with n = s*s*f and f squarefree (see module note)."""
    s, f = 1, 1
    p = 2
    while p * p <= n and p <= _SQUAREFREE_TRIAL_LIMIT:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                f *= p
        p += 1 if p == 2 else 2
    r = isqrt(n)
    if r * r == n:
        s *= r
    else:
        f *= n
    return s, f


def _sign_single_radical(a: int, b: int, d: int) -> int:
    """Sign of a + b*sqrt(d) for squarefree d >= 2 (d == 1 means rational a+b)."""
    if d == 1:
        return _sign(a + b)
    if b == 0:
        return _sign(a)
    if a == 0:
        return _sign(b)
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    lhs, rhs = a * a, b * b * d
    if lhs == rhs:
        return 0  # unreachable for squarefree d >= 2 with b != 0
    return _sign(lhs - rhs) * _sign(a)


def _sign_two_radicals(a: int, b: int, d1: int, c: int, d2: int) -> int:
    """Sign of a + b*sqrt(d1) + c*sqrt(d2); d1 != d2 squarefree >= 2, b, c != 0.

    One squaring reduces the pair of radicals to a single sqrt(d1*d2) and a
    second squaring (inside _sign_single_radical) finishes the job.
    """
    if b > 0 and c > 0:
        s_u = 1
    elif b < 0 and c < 0:
        s_u = -1
    else:
        s_u = _sign(b * b * d1 - c * c * d2) * _sign(b)
    if a == 0:
        return s_u
    s_a = _sign(a)
    if s_a == s_u:
        return s_a
    # |a| versus |u| where u = b*sqrt(d1) + c*sqrt(d2):
    # a^2 - u^2 = (a^2 - b^2 d1 - c^2 d2) - 2 b c sqrt(d1 d2)
    t = a * a - b * b * d1 - c * c * d2
    u = -2 * b * c
    g = gcd(d1, d2)
    rad = (d1 // g) * (d2 // g)
    s2 = _sign_single_radical(t, u * g, rad)
    if s2 == 0:
        return 0  # |a| == |u| cannot happen with b, c != 0
    return s_a if s2 > 0 else s_u


@dataclass(frozen=True, slots=True, eq=False)
class ExactReal:
    """Canonical value (num + q*sqrt(d))/den; q == 0 and d == 1 for rationals.

    Construct through from_rational / from_quadratic / make_exact, which
    enforce den > 0, gcd(num, q, den) == 1, and squarefree d.
    """

    num: int = 0
    q: int = 0
    den: int = 1
    d: int = 1

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rational(num: RationalLike, den: int = 1) -> "ExactReal":
        if den == 0:
            raise ValueError("zero denominator")
        frac = Fraction(num, den)
        return ExactReal(frac.numerator, 0, frac.denominator, 1)

    @staticmethod
    def from_quadratic(p: int, q: int, r: int, d: int) -> "ExactReal":
        if r == 0:
            raise ValueError("zero denominator")
        if d < 0:
            raise ValueError("negative radicand")
        if q == 0 or d in (0, 1):
            return ExactReal.from_rational(p + q * (d if d == 1 else isqrt(d)), r)
        s, f = _squarefree_split(d)
        q *= s
        if f == 1:
            return ExactReal.from_rational(p + q, r)
        if r < 0:
            p, q, r = -p, -q, -r
        g = gcd(gcd(p, q), r)
        return ExactReal(p // g, q // g, r // g, f)

    @staticmethod
    def from_json(obj: Mapping) -> "ExactReal":
        kind = obj.get("kind")
        if kind == "rational":
            return ExactReal.from_rational(int(obj["num"]), int(obj["den"]))
        if kind == "quadratic":
            return ExactReal.from_quadratic(
                int(obj["p"]), int(obj["q"]), int(obj["r"]), int(obj["d"])
            )
        raise ValueError(f"unknown ExactReal kind: {kind!r}")

    # -- structure ---------------------------------------------------------

    @property
    def kind(self) -> str:
        return "rational" if self.q == 0 else "quadratic"

    def is_rational(self) -> bool:
        return self.q == 0

    def is_zero(self) -> bool:
        return self.num == 0 and self.q == 0

    def is_integer(self) -> bool:
        return self.q == 0 and self.den == 1

    def as_fraction(self) -> Fraction:
        if self.q != 0:
            raise ValueError("not a rational value")
        return Fraction(self.num, self.den)

    def decompose(self) -> tuple[Fraction, Fraction, int]:
        """(rational part, sqrt coefficient, radicand); coefficient 0, d 1 for rationals."""
        return Fraction(self.num, self.den), Fraction(self.q, self.den), self.d

    def to_json(self) -> dict:
        if self.q == 0:
            return {"kind": "rational", "num": self.num, "den": self.den}
        return {"kind": "quadratic", "p": self.num, "q": self.q, "r": self.den, "d": self.d}

    def __str__(self) -> str:
        if self.q == 0:
            return f"{self.num}" if self.den == 1 else f"{self.num}/{self.den}"
        core = f"{self.num}{'+' if self.q >= 0 else '-'}{abs(self.q)}*sqrt({self.d})"
        return f"({core})" if self.den == 1 else f"({core})/{self.den}"

    def approx_float(self) -> float:
        """Display-only approximation; never used in exact decisions."""
        return self.num / self.den + (self.q / self.den) * self.d**0.5

    # -- arithmetic (closed inside one quadratic field) ---------------------

    def _coerce(self, other) -> "ExactReal":
        if isinstance(other, ExactReal):
            return other
        if isinstance(other, (int, Fraction)):
            return ExactReal.from_rational(other)
        return NotImplemented

    def __neg__(self) -> "ExactReal":
        return ExactReal(-self.num, -self.q, self.den, self.d)

    def __add__(self, other) -> "ExactReal":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.q != 0 and o.q != 0 and self.d != o.d:
            raise MixedFieldError(f"cannot add sqrt({self.d}) and sqrt({o.d}) values")
        d = self.d if self.q != 0 else o.d
        return ExactReal.from_quadratic(
            self.num * o.den + o.num * self.den,
            self.q * o.den + o.q * self.den,
            self.den * o.den,
            d,
        )

    __radd__ = __add__

    def __sub__(self, other) -> "ExactReal":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "ExactReal":
        return (-self) + other

    def __mul__(self, other) -> "ExactReal":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.q != 0 and o.q != 0 and self.d != o.d:
            raise MixedFieldError(f"cannot multiply sqrt({self.d}) and sqrt({o.d}) values")
        d = self.d if self.q != 0 else o.d
        return ExactReal.from_quadratic(
            self.num * o.num + self.q * o.q * d,
            self.num * o.q + self.q * o.num,
            self.den * o.den,
            d,
        )

    __rmul__ = __mul__

    def reciprocal(self) -> "ExactReal":
        if self.is_zero():
            raise ZeroDivisionError("reciprocal of zero")
        if self.q == 0:
            return ExactReal.from_rational(self.den, self.num)
        # 1/x = r (p - q sqrt(d)) / (p^2 - q^2 d); nonzero since d is not a square
        e = self.num * self.num - self.q * self.q * self.d
        return ExactReal.from_quadratic(self.den * self.num, -self.den * self.q, e, self.d)

    # -- exact order --------------------------------------------------------

    def sign(self) -> int:
        return _sign_single_radical(self.num, self.q, self.d)

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare ExactReal with {type(other).__name__}")
        a, b, dx = self.num, self.q, self.d
        c, e, dy = o.num, o.q, o.d
        r, s = self.den, o.den
        # sign of (s a - r c) + s b sqrt(dx) - r e sqrt(dy)
        const = s * a - r * c
        if b == 0 and e == 0:
            return _sign(const)
        if e == 0:
            return _sign_single_radical(const, s * b, dx)
        if b == 0:
            return _sign_single_radical(const, -r * e, dy)
        if dx == dy:
            return _sign_single_radical(const, s * b - r * e, dx)
        return _sign_two_radicals(const, s * b, dx, -r * e, dy)

    def __eq__(self, other) -> bool:
        if not isinstance(other, (ExactReal, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        return (self.num, self.q, self.den, self.d) == (o.num, o.q, o.den, o.d)

    def __hash__(self) -> int:
        return hash((self.num, self.q, self.den, self.d))

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other) -> bool:
        return self._cmp(other) >= 0

    # -- certified rational enclosures --------------------------------------

    def rational_bounds(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        """lo <= value <= hi with 2^-bits-wide certified rational endpoints."""
        rat = Fraction(self.num, self.den)
        if self.q == 0:
            return rat, rat
        scale = 1 << bits
        t = isqrt(self.q * self.q * self.d * scale * scale)  # floor(|q| sqrt(d) 2^bits)
        if self.q > 0:
            radical_lo, radical_hi = Fraction(t, scale), Fraction(t + 1, scale)
        else:
            radical_lo, radical_hi = Fraction(-t - 1, scale), Fraction(-t, scale)
        return rat + radical_lo / self.den, rat + radical_hi / self.den


def make_exact(spec) -> ExactReal:
    """Build an ExactReal from an int, Fraction, (num, den), (p, q, r, d), or JSON dict."""
    if isinstance(spec, ExactReal):
        return spec
    if isinstance(spec, (int, Fraction)):
        return ExactReal.from_rational(spec)
    if isinstance(spec, Mapping):
        return ExactReal.from_json(spec)
    if isinstance(spec, Sequence):
        items = tuple(int(v) for v in spec)
        if len(items) == 2:
            return ExactReal.from_rational(*items)
        if len(items) == 4:
            return ExactReal.from_quadratic(*items)
    raise ValueError(f"cannot interpret {spec!r} as an exact real")


def compare(x: ExactReal, y: ExactReal) -> int:
    """Exact trichotomy: -1 (less), 0 (equal), +1 (greater)."""
    return x._cmp(y)


def floor_mult(x: ExactReal, k: int) -> int:
    """floor(k*x) for k >= 1, certified by integer comparisons."""
    if k < 1:
        raise ValueError("k must be >= 1")
    a = k * x.num
    if x.q == 0:
        return a // x.den
    b = k * x.q
    t = isqrt(b * b * x.d)  # |b| sqrt(d) lies strictly in (t, t+1)
    m = a + t if b > 0 else a - t - 1
    return m // x.den


def ceil_mult(x: ExactReal, k: int) -> int:
    """ceil(k*x) for k >= 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if x.q == 0:
        return -((-k * x.num) // x.den)
    return floor_mult(x, k) + 1  # k*x is irrational, so never an integer


def multiple_is_integral(x: ExactReal, k: int) -> bool:
    """True when k*x is an integer (only possible for rational x)."""
    return x.q == 0 and (k * x.num) % x.den == 0


@dataclass(frozen=True, slots=True)
class CFExpansion:
    """Partial quotients of a continued fraction, with period if detected.

    terminated marks a rational input whose full (shorter) expansion was
    returned.  For a quadratic irrational, preperiod/period describe the
    eventually-periodic tail once the state recurs.
    """

    quotients: tuple[int, ...]
    terminated: bool = False
    preperiod: int | None = None
    period: tuple[int, ...] | None = None


def continued_fraction(x: ExactReal, n: int) -> CFExpansion:
    """First n partial quotients of x (fewer if the expansion terminates)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    quotients: list[int] = []
    seen: dict[ExactReal, int] = {}
    state = x
    while len(quotients) < n:
        if state in seen:
            start = seen[state]
            block = tuple(quotients[start:])
            while len(quotients) < n:
                quotients.append(block[(len(quotients) - start) % len(block)])
            return CFExpansion(tuple(quotients), False, start, block)
        seen[state] = len(quotients)
        a = floor_mult(state, 1)
        quotients.append(a)
        frac = state - a
        if frac.is_zero():
            return CFExpansion(tuple(quotients), True)
        state = frac.reciprocal()
    return CFExpansion(tuple(quotients))


def convergents(quotients: Sequence[int]) -> list[tuple[int, int]]:
    """(p_k, q_k) for each partial quotient, via the standard recurrence."""
    out: list[tuple[int, int]] = []
    p_prev, q_prev, p, q = 1, 0, quotients[0], 1
    out.append((p, q))
    for a in quotients[1:]:
        p_prev, q_prev, p, q = p, q, a * p + p_prev, a * q + q_prev
        out.append((p, q))
    return out


def floor_radical_sum(rational: Fraction, radicals: Iterable[tuple[Fraction, int]]) -> int:
    """floor(rational + sum c*sqrt(d)) with certified refinement.

    The d's must be squarefree and >= 2.  Terminates because a nonzero
    rational combination of square roots of distinct squarefree integers is
    irrational; when every coefficient is zero the plain rational floor is
    returned.
    """
    terms: dict[int, Fraction] = {}
    for coeff, d in radicals:
        if coeff:
            terms[d] = terms.get(d, Fraction(0)) + coeff
    terms = {d: c for d, c in terms.items() if c}
    if not terms:
        return _floor_frac(rational)
    bits = 32
    while bits <= 1 << 20:
        scale = 1 << bits
        lo = hi = rational
        for d, c in terms.items():
            t = isqrt(d * scale * scale)
            if c > 0:
                lo += c * Fraction(t, scale)
                hi += c * Fraction(t + 1, scale)
            else:
                lo += c * Fraction(t + 1, scale)
                hi += c * Fraction(t, scale)
        f_lo, f_hi = _floor_frac(lo), _floor_frac(hi)
        if f_lo == f_hi:
            return f_lo
        bits *= 2
    raise AssertionError("radical sum refinement did not converge")
