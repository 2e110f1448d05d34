"""Complete enumeration of nullhomologous generators by index.

Enumeration refuses to run without either a quadrant-positivity certificate
for the quadratic form (which yields a provably sufficient search box) or an
explicit user box; a silent incomplete census is never produced.  On top of
the census sit the index spectrum, growth-exponent fits, the lattice-point
triangle oracle, and the one-generator-per-even-index verification.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import ceil, isqrt, log
from statistics import linear_regression
from typing import Sequence

from .errors import (
    CensusBoundError,
    DegenerateAngleError,
    HyperbolicOrbitError,
    IndexParityError,
)
from .exactreal import ExactReal, floor_mult
from .orbits import (
    ELLIPTIC,
    Generator,
    Homology,
    Orbit,
    OrbitSystem,
    nullhomologous_lattice,
)
from .indices import qbar_quadrant_positive

_BOUND_BITS = 32


@dataclass(frozen=True, slots=True)
class CensusResult:
    """All generators with index <= cutoff, sorted by (index, multiplicities).

    box is None for a certified-complete census; otherwise completeness is
    only relative to the recorded box.
    """

    cutoff: int
    entries: tuple[tuple[Generator, int], ...]
    lattice_index: int
    box: tuple[int, ...] | None = None

    def indices(self) -> list[int]:
        return [i for _, i in self.entries]

    def count_up_to(self, j: int) -> int:
        """N(j) = number of enumerated generators with index <= j."""
        return bisect_right(self.indices(), j)


def floor_prefix_table(phi: ExactReal, m_max: int) -> list[int]:
    """table[m] = sum_{k=1..m} floor(k*phi), for m = 0..m_max."""
    table = [0] * (m_max + 1)
    acc = 0
    for k in range(1, m_max + 1):
        acc += floor_mult(phi, k)
        table[k] = acc
    return table


def _require_all_elliptic(system: OrbitSystem) -> None:
    for orbit in system.orbits:
        if not orbit.is_elliptic():
            raise HyperbolicOrbitError(
                f"orbit {orbit.name} is hyperbolic; the census covers all-elliptic systems"
            )


def _sqrt_upper(x: Fraction) -> Fraction:
    """A rational upper bound for sqrt(x), x >= 0."""
    if x < 0:
        raise ValueError("negative radicand")
    return Fraction(isqrt(x.numerator * x.denominator) + 1, x.denominator)


def _phi_bounds(system: OrbitSystem, bits: int) -> list[tuple[Fraction, Fraction]]:
    return [orbit.phi.rational_bounds(bits) for orbit in system.orbits]


def _coercivity(system: OrbitSystem) -> Fraction:
    """Certified rational c > 0 with Qbar(m) >= c |m|^2 on the quadrant.

    Only called after qbar_quadrant_positive(system) returned "positive", so
    refinement of the rational enclosures terminates.
    """
    n = system.n
    bits = _BOUND_BITS
    while True:
        bounds = _phi_bounds(system, bits)
        los = [lo for lo, _ in bounds]
        if all(lo > 0 for lo in los):
            if all(system.linking[i][j] >= 0 for i in range(n) for j in range(i + 1, n)):
                return min(los)
            if n == 2:
                q12 = system.linking[0][1]
                det_lo = los[0] * los[1] - q12 * q12
                if det_lo > 0:
                    his = [hi for _, hi in bounds]
                    # Qbar * phi_j = (phi_j m_j + q12 m_i)^2 + det * m_i^2
                    per_axis = min(det_lo / his[1], det_lo / his[0])
                    return per_axis / 2
            else:
                dominance = [
                    los[i] - sum(abs(system.linking[i][j]) for j in range(n) if j != i)
                    for i in range(n)
                ]
                if all(v > 0 for v in dominance):
                    return min(dominance)
        bits *= 2
        if bits > 1 << 16:
            raise AssertionError("coercivity refinement did not converge")


def _certified_box(system: OrbitSystem, i_max: int) -> int:
    """Per-coordinate bound B: any m with some m_i > B has index > i_max.

    Uses I(m) > Qbar(m) - sum m_i max(0, 2 - 2 eta_i - phi_i) together with
    the coercivity constant of the quadrant-positive form.
    """
    if i_max < 0:
        return 0
    c = _coercivity(system)
    slack = Fraction(0)
    for (lo, _), orbit in zip(_phi_bounds(system, _BOUND_BITS), system.orbits):
        slack = max(slack, max(Fraction(0), 2 - 2 * orbit.eta - lo))
    n = system.n
    # solve c t^2 - n*slack*t - i_max <= 0 for t
    disc = (n * slack) ** 2 + 4 * c * i_max
    radius = (n * slack + _sqrt_upper(disc)) / (2 * c)
    return ceil(radius) + 1


def enumerate_generators(
    system: OrbitSystem,
    i_max: int,
    box: Sequence[int] | int | None = None,
) -> CensusResult:
    """All nullhomologous generators with index <= i_max.

    Without a box the search radius is derived from the quadrant-positivity
    certificate; if the certificate is not "positive" the census refuses.
    """
    _require_all_elliptic(system)
    lattice = nullhomologous_lattice(system)
    n = system.n
    if n == 0:
        entries = ((tuple(), 0),) if i_max >= 0 else ()
        return CensusResult(i_max, entries, 1, None)
    if box is None:
        cert = qbar_quadrant_positive(system)
        if cert.verdict != "positive":
            raise CensusBoundError(
                f"no positivity certificate (verdict: {cert.verdict}); supply a box"
            )
        limit = _certified_box(system, i_max)
        limits = [limit] * n
        recorded_box = None
    else:
        limits = [int(box)] * n if isinstance(box, int) else [int(b) for b in box]
        if len(limits) != n or any(b < 0 for b in limits):
            raise ValueError("box must give a nonnegative bound per orbit")
        recorded_box = tuple(limits)

    two_eta = []
    for orbit in system.orbits:
        doubled = 2 * orbit.eta
        if doubled.denominator != 1:
            raise ValueError(f"orbit {orbit.name}: eta must lie in (1/2)Z")
        two_eta.append(doubled.numerator)
    tables = [floor_prefix_table(o.phi, limits[i]) for i, o in enumerate(system.orbits)]
    linking = system.linking

    entries: list[tuple[Generator, int]] = []
    for m in product(*(range(b + 1) for b in limits)):
        if not lattice.contains(m):
            continue
        value = 0
        for i in range(n):
            mi = m[i]
            if mi == 0:
                continue
            value += mi * two_eta[i] + 2 * tables[i][mi]
            for j in range(i + 1, n):
                if m[j]:
                    value += 2 * mi * m[j] * linking[i][j]
        if value > i_max:
            continue
        if value % 2:
            raise IndexParityError(f"odd index {value} at {m}; eta inputs inconsistent")
        entries.append((m, value))
    entries.sort(key=lambda e: (e[1], e[0]))
    return CensusResult(i_max, tuple(entries), lattice.index, recorded_box)


def spectrum(system: OrbitSystem, i_max: int, box=None) -> list[int]:
    """Sorted multiset of indices of all generators with index <= i_max."""
    return enumerate_generators(system, i_max, box).indices()


@dataclass(frozen=True, slots=True)
class GrowthFit:
    """Log-log slope of the census counting function over the sampled cutoffs;
    the fit uses only the upper half of the samples (the asymptotic regime)."""

    exponent: float
    max_residual: float
    samples: tuple[int, ...]
    counts: tuple[int, ...]


def growth_exponent(system: OrbitSystem, k_samples: Sequence[int]) -> GrowthFit:
    """Fit N(k) ~ k^e over the given index cutoffs (at least 4 required)."""
    ks = sorted(set(int(k) for k in k_samples))
    if len(ks) < 4:
        raise ValueError("need at least 4 sample cutoffs")
    if ks[0] < 1:
        raise ValueError("cutoffs must be positive")
    census = enumerate_generators(system, ks[-1])
    indices = census.indices()
    counts = [bisect_right(indices, k) for k in ks]
    if any(c == 0 for c in counts):
        raise ValueError("a sample cutoff has no generators; enlarge the cutoffs")
    upper = len(ks) // 2
    xs = [log(k) for k in ks[upper:]]
    ys = [log(c) for c in counts[upper:]]
    fit = linear_regression(xs, ys)
    residual = max(abs(fit.slope * x + fit.intercept - y) for x, y in zip(xs, ys))
    return GrowthFit(fit.slope, residual, tuple(ks), tuple(counts))


def triangle_lattice_count(phi1: ExactReal, m: Sequence[int]) -> int:
    """Lattice points (x, y) with x, y >= 0 on or under the line of slope
    -phi1 through (m1, m2), i.e. phi1*x + y <= phi1*m1 + m2, counted exactly."""
    if phi1.is_rational():
        raise DegenerateAngleError("triangle count needs an irrational slope")
    if phi1.sign() <= 0:
        raise ValueError("slope parameter must be positive")
    m1, m2 = (int(v) for v in m)
    if m1 < 0 or m2 < 0:
        raise ValueError("corner point must sit in the closed quadrant")
    total = m2 + 1  # column x = m1
    for j in range(1, m1 + 1):  # columns x = m1 - j
        total += m2 + floor_mult(phi1, j) + 1
    j = 1
    while True:  # columns x = m1 + j, while anything fits under the line
        col = m2 - floor_mult(phi1, j)
        if col <= 0:
            break
        total += col
        j += 1
    return total


def _ellipsoid_system(phi1: ExactReal) -> OrbitSystem:
    one = Fraction(1)
    orbits = (
        Orbit("short", ELLIPTIC, eta=one, phi=phi1),
        Orbit("long", ELLIPTIC, eta=one, phi=phi1.reciprocal()),
    )
    return OrbitSystem(orbits, ((0, 1), (1, 0)), Homology())


@dataclass(frozen=True, slots=True)
class EllipsoidVerification:
    passed: bool
    first_discrepancy: str | None
    i_max: int
    generator_count: int


def ellipsoid_verify(phi1: ExactReal, i_max: int) -> EllipsoidVerification:
    """Check the two-orbit system with eta = Q12 = phi1*phi2 = 1: the spectrum
    must hit every even index in [0, i_max] exactly once, and each index must
    agree with the triangle lattice-point count."""
    if phi1.is_rational():
        raise DegenerateAngleError("the verification needs an irrational slope")
    if phi1.sign() <= 0:
        raise ValueError("slope parameter must be positive")
    system = _ellipsoid_system(phi1)
    census = enumerate_generators(system, i_max)
    seen: dict[int, Generator] = {}
    for m, value in census.entries:
        if value in seen:
            return EllipsoidVerification(
                False, f"indices collide: {seen[value]} and {m} both have I={value}",
                i_max, len(census.entries),
            )
        seen[value] = m
        expected = 2 * (triangle_lattice_count(phi1, m) - 1)
        if value != expected:
            return EllipsoidVerification(
                False,
                f"triangle oracle mismatch at m={m}: I={value}, lattice gives {expected}",
                i_max, len(census.entries),
            )
    for even in range(0, i_max + 1, 2):
        if even not in seen:
            return EllipsoidVerification(
                False, f"missing index {even}", i_max, len(census.entries)
            )
    return EllipsoidVerification(True, None, i_max, len(census.entries))


def min_index_on_shells(
    system: OrbitSystem, radii: Sequence[int]
) -> list[tuple[int, int]]:
    """(radius, min index) over generators whose Euclidean norm rounds up to
    the given radius; radius 0 is the empty generator."""
    _require_all_elliptic(system)
    out: list[tuple[int, int]] = []
    radii = sorted(set(int(r) for r in radii))
    if any(r < 0 for r in radii):
        raise ValueError("radii must be nonnegative")
    if not radii:
        return out
    r_max = radii[-1]
    lattice = nullhomologous_lattice(system)
    n = system.n
    two_eta = [(2 * o.eta).numerator for o in system.orbits]
    tables = [floor_prefix_table(o.phi, r_max) for o in system.orbits]
    best: dict[int, int] = {}
    for m in product(range(r_max + 1), repeat=n):
        norm_sq = sum(v * v for v in m)
        if norm_sq > r_max * r_max or not lattice.contains(m):
            continue
        radius = isqrt(norm_sq)
        if radius * radius < norm_sq:
            radius += 1  # ceil of the Euclidean norm
        value = 0
        for i in range(n):
            if m[i]:
                value += m[i] * two_eta[i] + 2 * tables[i][m[i]]
                for j in range(i + 1, n):
                    if m[j]:
                        value += 2 * m[i] * m[j] * system.linking[i][j]
        if radius not in best or value < best[radius]:
            best[radius] = value
    for r in radii:
        if r in best:
            out.append((r, best[r]))
    return out


def fit_shell_lower_bound(shells: Sequence[tuple[int, int]]) -> tuple[float, float]:
    """Least-squares (c1, c2) with min-I(r) ~ c1 r^2 - c2 over the shells."""
    pts = [(r, v) for r, v in shells if r > 0]
    if len(pts) < 2:
        raise ValueError("need at least two nonzero radii")
    xs = [float(r * r) for r, _ in pts]
    ys = [float(v) for _, v in pts]
    fit = linear_regression(xs, ys)
    return fit.slope, -fit.intercept
