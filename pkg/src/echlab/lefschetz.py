"""Lefschetz zeta bookkeeping for surface diffeomorphisms with elliptic
periodic orbits, and exact periodic-point detection for affine torus maps.

With every periodic point counting with weight +1, the zeta product formula
reads det(1 - tA) * prod_orbits (1 - t^p) = (1 - t)^2, where A is the induced
map on first homology.  The solver enumerates all (genus, A-invariants,
period multiset) data satisfying the identity within given bounds.  Affine
maps x -> Ax + b on the torus are checked for p-periodic points by exact
linear algebra over the translation's quadratic field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

from .exactreal import ExactReal, make_exact
from .intlinalg import det, identity, mat_mul, mat_pow, mat_sub, smith_normal_form, trace

Poly = list[int]  # coefficient list, index = power of t

SQUARE_ONE_MINUS_T = [1, -2, 1]


def _poly_mul(a: Poly, b: Poly) -> Poly:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_trim(a: Poly) -> Poly:
    end = len(a)
    while end > 1 and a[end - 1] == 0:
        end -= 1
    return a[:end]


def char_reciprocal(a: Sequence[Sequence[int]]) -> Poly:
    """det(I - tA) = sum_k (-1)^k E_k t^k with E_k the k-th principal minor sum."""
    n = len(a)
    coeffs = [0] * (n + 1)
    coeffs[0] = 1
    for k in range(1, n + 1):
        total = 0
        for rows in combinations(range(n), k):
            minor = [[a[i][j] for j in rows] for i in rows]
            total += det(minor)
        coeffs[k] = total if k % 2 == 0 else -total
    return coeffs


@dataclass(frozen=True, slots=True)
class ZetaInstance:
    """Genus, induced 2g x 2g map on H1, and the multiset of irreducible
    periodic-orbit periods."""

    genus: int
    matrix: tuple[tuple[int, ...], ...]
    periods: tuple[int, ...]

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")
        size = 2 * self.genus
        if len(self.matrix) != size or any(len(r) != size for r in self.matrix):
            raise ValueError("matrix must be 2g x 2g")
        if size and abs(det(self.matrix)) != 1:
            raise ValueError("induced map must be invertible over the integers")
        if any(p < 1 for p in self.periods):
            raise ValueError("periods must be positive")


def lefschetz_number(instance: ZetaInstance, p: int) -> int:
    """Lefschetz number 2 - tr(A^p) of the p-th iterate."""
    if p < 1:
        raise ValueError("iterate must be >= 1")
    if instance.genus == 0:
        return 2
    return 2 - trace(mat_pow(instance.matrix, p))


@dataclass(frozen=True, slots=True)
class ZetaCheck:
    passed: bool
    first_failing_power: int | None = None
    detail: str | None = None


def zeta_identity_check(instance: ZetaInstance, degree: int) -> ZetaCheck:
    """Exact check of det(1-tA) * prod (1-t^p) == (1-t)^2 as polynomials,
    plus the per-iterate fixed-point counts 2 - tr(A^p) == sum_{p(o) | p} p(o)
    for every p <= degree."""
    minimum = max(2, sum(instance.periods), 2 * instance.genus)
    if degree < minimum:
        raise ValueError(f"degree must be at least {minimum}")
    product = char_reciprocal(instance.matrix)
    for p in instance.periods:
        factor = [0] * (p + 1)
        factor[0], factor[p] = 1, -1
        product = _poly_mul(product, factor)
    product = _poly_trim(product)
    if product != SQUARE_ONE_MINUS_T:
        width = max(len(product), 3)
        padded = product + [0] * (width - len(product))
        target = SQUARE_ONE_MINUS_T + [0] * (width - 3)
        power = next(i for i in range(width) if padded[i] != target[i])
        return ZetaCheck(
            False, power,
            f"coefficient of t^{power} is {padded[power]}, expected {target[power]}",
        )
    for p in range(1, degree + 1):
        count = sum(q for q in instance.periods if p % q == 0)
        lefschetz = lefschetz_number(instance, p)
        if lefschetz != count:
            return ZetaCheck(
                False, p,
                f"fixed-point count at iterate {p}: Lefschetz gives {lefschetz}, orbits give {count}",
            )
    return ZetaCheck(True)


@dataclass(frozen=True, slots=True)
class ZetaSolution:
    genus: int
    trace: int | None
    det: int | None
    periods: tuple[int, ...]


def _partitions(total: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Multisets of positive integers with the given sum, nonincreasing order."""
    if total == 0:
        yield ()
        return
    cap = total if largest is None else min(largest, total)
    for first in range(cap, 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def zeta_solve(
    g_max: int, period_sum_max: int, trace_bound: int = 5
) -> list[ZetaSolution]:
    """All (genus, H1-map invariants, period multiset) satisfying the product
    identity within the bounds.

    Genus 0 has no H1 data; genus 1 maps are parametrized by (trace, det=1)
    since det(1-tA) only depends on those; genus >= 2 is ruled out by the
    degree obstruction (det(1-tA) has degree 2g with unit leading coefficient,
    so the left side has degree 2g + sum p > 2).
    """
    if g_max < 0 or period_sum_max < 0 or trace_bound < 0:
        raise ValueError("bounds must be nonnegative")
    solutions: list[ZetaSolution] = []
    multisets = [
        parts
        for s in range(period_sum_max + 1)
        for parts in _partitions(s)
    ]
    for periods in multisets:
        base = [1]
        for p in periods:
            factor = [0] * (p + 1)
            factor[0], factor[p] = 1, -1
            base = _poly_mul(base, factor)
        if g_max >= 0 and _poly_trim(base) == SQUARE_ONE_MINUS_T:
            solutions.append(ZetaSolution(0, None, None, periods))
        if g_max >= 1:
            for tr in range(-trace_bound, trace_bound + 1):
                quadratic = [1, -tr, 1]  # det(1 - tA) for det A = 1
                if _poly_trim(_poly_mul(quadratic, base)) == SQUARE_ONE_MINUS_T:
                    solutions.append(ZetaSolution(1, tr, 1, periods))
    solutions.sort(key=lambda s: (s.genus, s.trace if s.trace is not None else 0, s.periods))
    return solutions


# -- affine torus maps --------------------------------------------------------


@dataclass(frozen=True, slots=True)
class AffineTorusMap:
    """x -> Ax + b on the 2-torus, with det A = 1 and exact translation."""

    matrix: tuple[tuple[int, int], tuple[int, int]]
    translation: tuple[ExactReal, ExactReal]

    def __post_init__(self):
        if det(self.matrix) != 1:
            raise ValueError("matrix must have determinant 1")

    @staticmethod
    def build(matrix: Sequence[Sequence[int]], translation: Sequence) -> "AffineTorusMap":
        rows = tuple(tuple(int(v) for v in row) for row in matrix)
        b = tuple(make_exact(v) for v in translation)
        if len(rows) != 2 or len(b) != 2:
            raise ValueError("torus maps are 2 x 2 with a length-2 translation")
        return AffineTorusMap(rows, b)  # type: ignore[arg-type]


NONE = "none"
COUNT = "count"
POSITIVE_DIMENSIONAL = "positive-dimensional"


@dataclass(frozen=True, slots=True)
class PeriodicPointReport:
    kind: str
    count: int | None = None


def _is_integral_combination(pairs: Sequence[tuple[int, ExactReal]]) -> bool:
    """Whether sum coeff * value is an integer, deciding by field components."""
    rational = Fraction(0)
    radicals: dict[int, Fraction] = {}
    for coeff, value in pairs:
        rat, coeff_rad, d = value.decompose()
        rational += coeff * rat
        if coeff_rad:
            radicals[d] = radicals.get(d, Fraction(0)) + coeff * coeff_rad
    if any(v != 0 for v in radicals.values()):
        return False
    return rational.denominator == 1


def torus_periodic_points(tm: AffineTorusMap, p: int) -> PeriodicPointReport:
    """Solutions of (A^p - I) x = -c_p (mod Z^2) with c_p = (A^{p-1}+...+I) b.

    det(A^p - I) != 0 gives exactly |det| solutions for any translation; a
    singular nonzero difference is solvable (then a union of circles) exactly
    when the Smith-form obstruction row lands in the integers; A^p = I makes
    every point periodic when c_p is integral and none otherwise.
    """
    if p < 1:
        raise ValueError("iterate must be >= 1")
    a_pow = mat_pow(tm.matrix, p)
    b_matrix = mat_sub(a_pow, identity(2))
    # geometric sum I + A + ... + A^(p-1)
    acc = identity(2)
    term = identity(2)
    for _ in range(p - 1):
        term = mat_mul(term, tm.matrix)
        acc = [[acc[i][j] + term[i][j] for j in range(2)] for i in range(2)]
    b0, b1 = tm.translation

    if all(v == 0 for row in b_matrix for v in row):
        integral = all(
            _is_integral_combination([(acc[i][0], b0), (acc[i][1], b1)]) for i in range(2)
        )
        return PeriodicPointReport(POSITIVE_DIMENSIONAL if integral else NONE)
    determinant = det(b_matrix)
    if determinant != 0:
        return PeriodicPointReport(COUNT, abs(determinant))
    u, _, _ = smith_normal_form(b_matrix)
    # rank 1: solvability needs the second transformed component integral
    obstruction_row = u[1]
    coeff0 = obstruction_row[0] * acc[0][0] + obstruction_row[1] * acc[1][0]
    coeff1 = obstruction_row[0] * acc[0][1] + obstruction_row[1] * acc[1][1]
    solvable = _is_integral_combination([(coeff0, b0), (coeff1, b1)])
    return PeriodicPointReport(POSITIVE_DIMENSIONAL if solvable else NONE)


@dataclass(frozen=True, slots=True)
class TorusOrbitReport:
    rows: tuple[tuple[int, PeriodicPointReport], ...]
    first_period: int | None

    @property
    def verdict(self) -> str:
        if self.first_period is None:
            top = self.rows[-1][0] if self.rows else 0
            return f"no periodic orbits up to period {top}"
        return f"first periodic points at period {self.first_period}"


def torus_orbit_report(tm: AffineTorusMap, p_max: int) -> TorusOrbitReport:
    """Tabulate torus_periodic_points for p = 1..p_max."""
    if p_max < 1:
        raise ValueError("p_max must be >= 1")
    rows = []
    first = None
    for p in range(1, p_max + 1):
        report = torus_periodic_points(tm, p)
        rows.append((p, report))
        if first is None and report.kind != NONE:
            first = p
    return TorusOrbitReport(tuple(rows), first)
