"""Best-upper-approximation denominator sets of an irrational angle.

S(theta) collects the positive integers q at which ceil(q*theta)/q drops
strictly below its value at every smaller denominator, i.e. theta is better
approximated from above at q than at any q' < q.  The set only depends on
theta mod 1.  Members are computed two independent ways: a linear scan of
the defining condition with exact ceilings, and the upper semiconvergents
of the continued-fraction expansion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import DegenerateAngleError
from .exactreal import ExactReal, ceil_mult, continued_fraction, multiple_is_integral

POSITIVE = "positive"
NEGATIVE = "negative"


def _ceil_checked(theta: ExactReal, q: int) -> int:
    if multiple_is_integral(theta, q):
        raise DegenerateAngleError(
            f"{q}*theta is an integer; the approximation set is undefined there"
        )
    return ceil_mult(theta, q)


def _scan(theta: ExactReal, limit: int) -> Iterator[int]:
    """Yield members of S(theta) up to limit, maintaining the running minimum
    of ceil(q*theta)/q as an integer pair (no fraction normalization)."""
    best_num, best_den = 0, 0  # empty minimum: q = 1 joins vacuously
    for q in range(1, limit + 1):
        c = _ceil_checked(theta, q)
        if best_den == 0 or c * best_den < best_num * q:
            yield q
            best_num, best_den = c, q


def in_s_theta(theta: ExactReal, q: int) -> bool:
    """Exact membership test for a single denominator."""
    if q < 1:
        raise ValueError("q must be a positive integer")
    member = False
    for hit in _scan(theta, q):
        member = hit == q
    return member


def s_theta_up_to(theta: ExactReal, bound: int) -> list[int]:
    """All members of S(theta) in [1, bound], ascending."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    return list(_scan(theta, bound))


def semiconvergents_above(theta: ExactReal, bound: int) -> list[Fraction]:
    """The best upper approximations ceil(q*theta)/q for q in S(theta), built
    from the continued fraction: at every odd level k the mediants
    (p_{k-2} + j p_{k-1})/(q_{k-2} + j q_{k-1}), j = 1..a_k, approach theta
    strictly from above.  Denominators reproduce s_theta_up_to."""
    if theta.is_rational():
        raise DegenerateAngleError("semiconvergents from above need an irrational angle")
    if bound < 1:
        raise ValueError("bound must be >= 1")
    quotients = _Quotients(theta)
    out: list[Fraction] = []
    p_prev, q_prev = 1, 0  # convergent h_{k-2}, seeded at h_{-1}
    p_cur, q_cur = quotients[0], 1  # convergent h_{k-1}, seeded at h_0
    k = 1
    # mediant denominators grow strictly with k, so stop once the smallest
    # denominator q_{k-2} + q_{k-1} of the current level passes the bound
    while q_prev + q_cur <= bound:
        a = quotients[k]
        if k % 2 == 1:
            for j in range(1, a + 1):
                den = q_prev + j * q_cur
                if den > bound:
                    break
                out.append(Fraction(p_prev + j * p_cur, den))
        p_prev, q_prev, p_cur, q_cur = (
            p_cur,
            q_cur,
            a * p_cur + p_prev,
            a * q_cur + q_prev,
        )
        k += 1
    return out


class _Quotients:
    """Lazy partial-quotient accessor; refetches with a doubled count on demand."""

    def __init__(self, theta: ExactReal):
        self._theta = theta
        self._cached = continued_fraction(theta, 16).quotients

    def __getitem__(self, k: int) -> int:
        while k >= len(self._cached):
            self._cached = continued_fraction(self._theta, 2 * len(self._cached)).quotients
        return self._cached[k]


def density_profile(
    theta: ExactReal, bound: int, samples: int | Sequence[int] = 10
) -> list[tuple[int, Fraction]]:
    """Exact member densities |S intersect [1, n]| / n at sampled n values."""
    if isinstance(samples, int):
        if samples < 1:
            raise ValueError("need at least one sample point")
        points = sorted({max(1, round(bound * (j + 1) / samples)) for j in range(samples)})
    else:
        points = sorted({int(n) for n in samples})
        if not points or points[0] < 1 or points[-1] > bound:
            raise ValueError("sample points must lie in [1, bound]")
    members = s_theta_up_to(theta, bound)
    out = []
    idx = 0
    for n in points:
        while idx < len(members) and members[idx] <= n:
            idx += 1
        out.append((n, Fraction(idx, n)))
    return out


def admissible_end_multiplicity(theta: ExactReal, m: int, sign: str) -> bool:
    """Admissibility of an end multiplicity: positive ends need m in S(-theta),
    negative ends need m in S(theta)."""
    if sign == POSITIVE:
        return in_s_theta(-theta, m)
    if sign == NEGATIVE:
        return in_s_theta(theta, m)
    raise ValueError(f"sign must be '{POSITIVE}' or '{NEGATIVE}'")


@dataclass(frozen=True, slots=True)
class SThetaProfile:
    theta: ExactReal
    bound: int
    members: tuple[int, ...]
    density_curve: tuple[tuple[int, Fraction], ...]


def profile(theta: ExactReal, bound: int, samples: int = 10) -> SThetaProfile:
    return SThetaProfile(
        theta=theta,
        bound=bound,
        members=tuple(s_theta_up_to(theta, bound)),
        density_curve=tuple(density_profile(theta, bound, samples)),
    )
