"""Classify explicit quintics into the cactus atlas.

The critical values of a generic quintic are either the corners of a convex
quadrangle or a triangle with one value inside.  The five roots of
``p(z) = w0`` for a base point ``w0`` inside the polygon are the ovals; a
gluing labelled ``l`` joins the two roots that collide when ``w`` is pushed
from ``w0`` to the critical value ``u_l``.
"""
from __future__ import annotations

import cmath
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .cactus import (CactusClass, FirstCactus, SecondCactus, X, Y,
                     canonical_first, canonical_second, make_first_cactus,
                     make_second_cactus)
from .errors import (BigSelfGluing, CollisionAmbiguous, Divergence,
                     GenericityError, NonQuintic, NumericError, PathClearance)

QUADRANGLE, TRIANGLE = "quadrangle", "triangle"

ROOT_TOL = 1e-12
VALUE_TOL = 1e-9
COLLINEAR_TOL = 1e-9
DEFAULT_MESH = 32
# stop this close (relative to the piece length) short of a critical value
END_GAP = 1e-8


# ---------------------------------------------------------------------------
# Polynomials and roots
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolynomialSpec:
    """Degree-5 polynomial, coefficients from the leading one down."""

    coeffs: tuple[complex, ...]

    def __post_init__(self):
        if len(self.coeffs) != 6:
            raise NonQuintic(f"expected 6 coefficients, got {len(self.coeffs)}")
        if not all(np.isfinite(complex(c)) for c in self.coeffs):
            raise NonQuintic("coefficients must be finite")
        if abs(self.coeffs[0]) == 0:
            raise NonQuintic("leading coefficient vanishes")

    @classmethod
    def from_coeffs(cls, coeffs: Sequence) -> "PolynomialSpec":
        return cls(tuple(complex(c) for c in coeffs))

    @classmethod
    def parse(cls, text: str) -> "PolynomialSpec":
        """Six ``re,im`` tokens, highest degree first, separated by whitespace."""
        coeffs = []
        for tok in text.split():
            try:
                re, im = tok.split(",")
                coeffs.append(complex(float(re), float(im)))
            except ValueError:
                raise NonQuintic(f"bad coefficient token {tok!r}") from None
        return cls(tuple(coeffs))

    def to_text(self) -> str:
        return " ".join(f"{c.real!r},{c.imag!r}" for c in self.coeffs)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=complex)

    def __call__(self, z):
        return np.polyval(self.array, z)

    def derivative(self) -> np.ndarray:
        return np.polyder(self.array)


def aberth_roots(coeffs, tol: float = ROOT_TOL, max_iter: int = 500) -> np.ndarray:
    """All roots at once by the Aberth-Ehrlich iteration, Newton-polished."""
    c = np.asarray(coeffs, dtype=complex)
    c = np.trim_zeros(c, "f")
    n = len(c) - 1
    if n < 1:
        raise ValueError("constant polynomial has no roots")
    c = c / c[0]
    dc = np.polyder(c)
    radius = max(abs(c[k]) ** (1.0 / k) for k in range(1, n + 1))
    radius = radius if radius > 0 else 1.0
    z = radius * np.exp(1j * (2 * np.pi * np.arange(n) / n + 0.4))
    off = ~np.eye(n, dtype=bool)
    for _ in range(max_iter):
        pz = np.polyval(c, z)
        dpz = np.polyval(dc, z)
        dpz = np.where(dpz == 0, 1e-300, dpz)
        ratio = pz / dpz
        diff = z[:, None] - z[None, :]
        inv = np.zeros_like(diff)
        np.divide(1.0, diff, out=inv, where=off & (diff != 0))
        step = ratio / (1 - ratio * inv.sum(axis=1))
        z = z - step
        if np.max(np.abs(step)) <= tol * max(1.0, np.max(np.abs(z))):
            break
    for _ in range(3):
        dpz = np.polyval(dc, z)
        ok = np.abs(dpz) > 1e-12 * np.maximum(1.0, np.abs(z)) ** (n - 1)
        z = np.where(ok, z - np.polyval(c, z) / np.where(ok, dpz, 1), z)
    return z


def relative_residual(coeffs, z) -> float:
    c = np.asarray(coeffs, dtype=complex)
    scale = np.polyval(np.abs(c), np.abs(z))
    return float(np.max(np.abs(np.polyval(c, z)) / np.where(scale == 0, 1, scale)))


# ---------------------------------------------------------------------------
# Critical data
# ---------------------------------------------------------------------------

def _orient(a: complex, b: complex, c: complex) -> float:
    return ((b - a).conjugate() * (c - a)).imag


def _ccw(points: Sequence[complex], idx: Sequence[int]) -> list[int]:
    centre = sum(points[i] for i in idx) / len(idx)
    return sorted(idx, key=lambda i: cmath.phase(points[i] - centre))


@dataclass(frozen=True)
class CriticalData:
    """Critical points and values in label order.

    Quadrangle: labels 0..3 run counter-clockwise around the hull.
    Triangle: labels 0..2 run counter-clockwise around the triangle and the
    interior value comes last.
    """

    points: tuple[complex, ...]
    values: tuple[complex, ...]
    case: str
    scale: float
    tolerances: dict = field(default_factory=dict)

    @property
    def boundary(self) -> tuple[complex, ...]:
        return self.values if self.case == QUADRANGLE else self.values[:3]

    @property
    def interior(self) -> complex | None:
        return None if self.case == QUADRANGLE else self.values[3]


def critical_data(p: PolynomialSpec, tol: float = ROOT_TOL,
                  value_tol: float = VALUE_TOL,
                  collinear_tol: float = COLLINEAR_TOL) -> CriticalData:
    if not 0 < tol <= 1e-3:
        raise ValueError("tol must lie in (0, 1e-3]")
    dp = p.derivative()
    z = aberth_roots(dp, tol=min(tol, ROOT_TOL))
    residual = relative_residual(dp, z)
    absolute = float(np.max(np.abs(np.polyval(dp, z))
                            / np.polyval(np.abs(dp), np.maximum(1.0, np.abs(z)))))
    if absolute > max(tol, 1e-10):
        raise GenericityError(f"critical points not resolved (residual {absolute:.2e})")
    u = p(z)
    zscale = float(np.max(np.abs(z))) or 1.0
    scale = max(float(np.max(np.abs(u))), abs(p.coeffs[0]))
    for i in range(4):
        for j in range(i + 1, 4):
            if abs(z[i] - z[j]) <= tol * zscale:
                raise GenericityError("coincident critical points")
            if abs(u[i] - u[j]) <= value_tol * scale:
                raise GenericityError("coincident critical values")
    spread = max(abs(u[i] - u[j]) for i in range(4) for j in range(4))
    for i in range(4):
        for j in range(i + 1, 4):
            for k in range(j + 1, 4):
                if abs(_orient(u[i], u[j], u[k])) / 2 <= collinear_tol * spread ** 2:
                    raise GenericityError("three critical values are collinear")

    inside = []
    for i in range(4):
        a, b, c = (u[j] for j in range(4) if j != i)
        s = [_orient(a, b, u[i]), _orient(b, c, u[i]), _orient(c, a, u[i])]
        if all(x > 0 for x in s) or all(x < 0 for x in s):
            inside.append(i)
    if len(inside) > 1:
        raise GenericityError("degenerate convex hull")
    if inside:
        order = _ccw(u, [j for j in range(4) if j != inside[0]]) + inside
        case = TRIANGLE
    else:
        order = _ccw(u, range(4))
        case = QUADRANGLE
    return CriticalData(
        points=tuple(complex(z[i]) for i in order),
        values=tuple(complex(u[i]) for i in order),
        case=case,
        scale=scale,
        tolerances={"root": tol, "value": value_tol, "collinear": collinear_tol,
                    "residual": residual},
    )


# ---------------------------------------------------------------------------
# Paths and continuation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Segment:
    start: complex
    end: complex

    def at(self, s: float) -> complex:
        return self.start + s * (self.end - self.start)

    @property
    def length(self) -> float:
        return abs(self.end - self.start)


@dataclass(frozen=True)
class Arc:
    centre: complex
    radius: float
    theta0: float
    sweep: float  # signed, positive = counter-clockwise

    def at(self, s: float) -> complex:
        return self.centre + self.radius * cmath.exp(1j * (self.theta0 + s * self.sweep))

    @property
    def start(self) -> complex:
        return self.at(0.0)

    @property
    def end(self) -> complex:
        return self.at(1.0)

    @property
    def length(self) -> float:
        return abs(self.radius * self.sweep)


@dataclass(frozen=True)
class CurvePath:
    """Probe path from the base point; ``target`` is a critical value or ``None``."""

    pieces: tuple
    target: complex | None = None

    def distance_to(self, w: complex, samples: int = 200) -> float:
        return min(abs(piece.at(s / samples) - w)
                   for piece in self.pieces for s in range(samples + 1))


def _horner(c: Sequence[complex], z: complex) -> complex:
    v = c[0]
    for a in c[1:]:
        v = v * z + a
    return v


_NOISE = 64 * np.finfo(float).eps


def _correct(c: list[complex], dc: list[complex], abs_c: list[float],
             z: list[complex], scale: float, iters: int = 12):
    """Newton on ``c(z) = 0`` for every branch; returns roots and largest correction."""
    out, worst = [], 0.0
    for zi in z:
        total = 0j
        for _ in range(iters):
            dp = _horner(dc, zi)
            if dp == 0:
                return None, None
            dz = _horner(c, zi) / dp
            zi -= dz
            total += dz
            # rounding floor of the evaluation, large next to a collision
            if abs(dz) <= max(1e-14 * scale, _NOISE * _horner(abs_c, abs(zi)) / abs(dp)):
                break
        else:
            return None, None
        out.append(zi)
        worst = max(worst, abs(total))
    return out, worst


def _min_gap(z) -> float:
    return min(abs(a - b) for i, a in enumerate(z) for b in z[i + 1:])


def track(p: PolynomialSpec, roots, piece, mesh: int = DEFAULT_MESH,
          stop: float = 1.0) -> np.ndarray:
    """Continue every root of ``p(z) = w`` while ``w`` runs along ``piece``.

    Tangent predictor, Newton corrector.  A step is accepted when the
    corrector converges and the roots stay separated by more than three
    times the distance they moved.
    """
    coeffs = [complex(a) for a in p.coeffs]
    dc = [complex(a) for a in p.derivative()]
    scale = max(1.0, max(abs(complex(r)) for r in roots))
    h_max = 1.0 / mesh
    s, h = 0.0, h_max
    z = [complex(r) for r in roots]
    w = piece.at(0.0)
    while s < stop:
        h = min(h, h_max, stop - s)
        if h < 1e-15:
            raise Divergence("continuation step underflow")
        w_next = piece.at(s + h)
        c = coeffs[:-1] + [coeffs[-1] - w_next]
        guess = [zi + (w_next - w) / _horner(dc, zi) for zi in z]
        new, correction = _correct(c, dc, [abs(a) for a in c], guess, scale)
        if new is None or _min_gap(new) <= 3 * max(
                correction, max(abs(a - b) for a, b in zip(new, z))):
            h /= 2
            continue
        s, z, w = s + h, new, w_next
        h *= 1.5
    return np.array(z)


def _permutation(before: np.ndarray, after: np.ndarray) -> list[int]:
    perm = [int(np.argmin(np.abs(before - a))) for a in after]
    if sorted(perm) != list(range(len(before))):
        raise Divergence("loop did not return to the base fibre")
    return perm


def _collision(z: np.ndarray, crit: complex, zscale: float) -> tuple[int, int]:
    d = np.abs(z - crit)
    order = np.argsort(d)
    near, far = d[order[1]], d[order[2]]
    if not (near <= 1e-3 * zscale and far > 10 * near):
        raise CollisionAmbiguous(f"no clean collision at {crit:.6g} (distances {np.sort(d)[:3]})")
    return int(min(order[0], order[1])), int(max(order[0], order[1]))


def _segment_clearance(a: complex, b: complex, w: complex) -> float:
    ab = b - a
    t = max(0.0, min(1.0, ((w - a) * ab.conjugate()).real / abs(ab) ** 2))
    return abs(a + t * ab - w)


def _quadrangle_base(cd: CriticalData) -> complex:
    # base point inside the hull with the best clearance from foreign values
    u = cd.values
    centroid = sum(u) / 4
    candidates = [centroid]
    for i in range(4):
        a, b = u[i], u[(i + 2) % 4]
        candidates.append((a + b) / 2)
    for i in range(4):
        candidates.append((centroid * 3 + u[i]) / 4)

    def clearance(w0):
        if any(_orient(u[i], u[(i + 1) % 4], w0) <= 0 for i in range(4)):
            return -1.0
        return min(_segment_clearance(w0, u[l], u[m])
                   for l in range(4) for m in range(4) if m != l)

    return max(candidates, key=clearance)


def probe_paths(cd: CriticalData) -> tuple[complex, list[CurvePath], CurvePath | None]:
    """Base point, one path per boundary label, and (triangle) the inner loop."""
    u = cd.values
    gaps = [abs(a - b) for i, a in enumerate(u) for b in u[i + 1:]]
    clearance = min(gaps) / 4
    if cd.case == QUADRANGLE:
        w0 = _quadrangle_base(cd)
        paths = [CurvePath((Segment(w0, u[l]),), u[l]) for l in range(4)]
        floor = 1e-7 * cd.scale
        for l, path in enumerate(paths):
            seg = path.pieces[0]
            for m in range(4):
                if m != l and _segment_clearance(seg.start, seg.end, u[m]) <= floor:
                    raise PathClearance(f"path to label {l} grazes critical value {m}")
        return w0, paths, None

    a = u[:3]
    c = u[3]
    side_dist = min(abs(_orient(a[i], a[(i + 1) % 3], c)) / abs(a[(i + 1) % 3] - a[i])
                    for i in range(3))
    r = min(clearance, side_dist / 2)
    if r <= 1e-9 * cd.scale:
        raise PathClearance("interior value too close to the triangle")
    ang = [cmath.phase(x - c) for x in a]

    def bisector(i, j):
        ti, tj = ang[i], ang[j]
        sweep = (tj - ti) % (2 * math.pi)
        return ti + sweep / 2

    # cut runs from c through side a2-a0; the base point sits in sector (a0, a1)
    th0, th1 = bisector(0, 1), bisector(1, 2)
    w0 = c + r * cmath.exp(1j * th0)
    q = c + r * cmath.exp(1j * th1)
    detour = Arc(c, r, th0, (th1 - th0) % (2 * math.pi))
    paths = [
        CurvePath((Segment(w0, a[0]),), a[0]),
        CurvePath((Segment(w0, a[1]),), a[1]),
        CurvePath((detour, Segment(q, a[2])), a[2]),
    ]
    loop = CurvePath((Arc(c, r, th0, 2 * math.pi),), None)
    return w0, paths, loop


def _follow(p: PolynomialSpec, z0: np.ndarray, path: CurvePath, mesh: int) -> np.ndarray:
    z = z0
    last = len(path.pieces) - 1
    for i, piece in enumerate(path.pieces):
        stop = 1.0 - END_GAP if (i == last and path.target is not None) else 1.0
        z = track(p, z, piece, mesh, stop)
    return z


def extract_cactus(p: PolynomialSpec, cd: CriticalData | None = None,
                   mesh: int = DEFAULT_MESH) -> FirstCactus | SecondCactus:
    if cd is None:
        cd = critical_data(p)
    w0, paths, loop = probe_paths(cd)
    c = p.array.copy()
    c[-1] -= w0
    z0 = aberth_roots(c)
    if _min_gap(z0) <= 1e-9 * max(1.0, float(np.max(np.abs(z0)))):
        raise Divergence("base fibre has coincident roots")
    zscale = max(1.0, float(np.max(np.abs(z0))))
    pairs = [_collision(_follow(p, z0, path, mesh), cd.points[l], zscale)
             for l, path in enumerate(paths)]

    if cd.case == QUADRANGLE:
        return make_first_cactus(5, list(enumerate(pairs)))

    perm = _permutation(z0, _follow(p, z0, loop, mesh))
    moved = [i for i, j in enumerate(perm) if i != j]
    if len(moved) != 2 or perm[moved[0]] != moved[1]:
        raise CollisionAmbiguous(f"inner loop permutes roots as {perm}")
    lo, hi = moved
    edges = []
    for l, (i, j) in enumerate(pairs):
        if {i, j} == {lo, hi}:
            raise BigSelfGluing(f"label {l} glues the big oval to itself")
        if j in (lo, hi):
            i, j = j, i
        if i in (lo, hi):
            edges.append((l, ("B", j), X if i == lo else Y))
        else:
            edges.append((l, (i, j), None))
    return make_second_cactus(edges, big="B")


# ---------------------------------------------------------------------------
# Classification and sampling
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    case: str
    atlas_index: int
    cls: CactusClass
    cactus: FirstCactus | SecondCactus
    critical: CriticalData

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "family": self.cls.family.value,
            "atlas_index": self.atlas_index,
            "canonical_key": self.cls.key_hex,
            "critical_points": [[z.real, z.imag] for z in self.critical.points],
            "critical_values": [[u.real, u.imag] for u in self.critical.values],
            "root_residual": self.critical.tolerances["residual"],
        }


def classify_polynomial(p: PolynomialSpec, mesh: int = DEFAULT_MESH,
                        tol: float = ROOT_TOL) -> Classification:
    cd = critical_data(p, tol)
    cactus = extract_cactus(p, cd, mesh)
    cls = canonical_second(cactus) if cd.case == TRIANGLE else canonical_first(cactus)
    return Classification(cd.case, cls.atlas_index, cls, cactus, cd)


def random_quintic(rng: np.random.Generator) -> PolynomialSpec:
    """Coefficients uniform in the unit disk."""
    r = np.sqrt(rng.random(6))
    theta = 2 * np.pi * rng.random(6)
    return PolynomialSpec.from_coeffs(r * np.exp(1j * theta))


@dataclass
class SampleReport:
    count: int
    seed: int
    frequencies: Counter = field(default_factory=Counter)
    errors: Counter = field(default_factory=Counter)
    unstable: int = 0

    @property
    def classified(self) -> int:
        return sum(self.frequencies.values())

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "seed": self.seed,
            "classified": self.classified,
            "frequencies": {f"{fam}:{idx}": n for (fam, idx), n in sorted(self.frequencies.items())},
            "errors": dict(sorted(self.errors.items())),
            "unstable_under_refinement": self.unstable,
        }


def sample_classes(count: int, seed: int, mesh: int = DEFAULT_MESH,
                   check_refinement: bool = True) -> SampleReport:
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = np.random.default_rng(seed)
    report = SampleReport(count, seed)
    for _ in range(count):
        p = random_quintic(rng)
        try:
            res = classify_polynomial(p, mesh)
        except NumericError as exc:
            report.errors[type(exc).__name__] += 1
            continue
        report.frequencies[(res.cls.family.value, res.atlas_index)] += 1
        if check_refinement:
            try:
                fine = classify_polynomial(p, 2 * mesh)
            except NumericError:
                report.unstable += 1
                continue
            if fine.cls != res.cls:
                report.unstable += 1
    return report
