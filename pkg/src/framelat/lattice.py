"""Lattices from coordinate frames: exact short-vector enumeration,
determinants, packing density, and scalar-orthogonal equivalence.

Everything except packing_density and the non-lattice demo is exact rational
arithmetic.  Short vectors are found with a Fincke-Pohst depth-first search on
the LDL' factorization of the Gram matrix, with interval endpoints computed by
exact integer square-root comparisons, and cross-checked elsewhere against a
certified brute-force box scan.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

import numpy as np

from .exact import (
    Mat,
    PivotBreakdownError,
    SizeMismatchError,
    SurdValue,
    bareiss_determinant,
    floor_sqrt,
    ldl_decompose,
    mat_inverse,
    sqrt_rational,
)
from .frames import CoordinateFrame, FrameSpec, basis_gram, coordinatize

F = Fraction


class NotPositiveDefiniteError(ValueError):
    pass


class SearchBudgetExceededError(RuntimeError):
    """Subset search hit its determinant-evaluation cap; status indeterminate."""


@dataclass(frozen=True)
class LatticeModel:
    k: int
    gram: list  # k x k symmetric positive definite rational matrix
    coord_frame: Optional[CoordinateFrame] = None


@dataclass(frozen=True)
class MinVecReport:
    min_norm_sq: Fraction
    vectors: list  # one canonical representative per +- pair, lex sorted
    count_with_signs: int


@dataclass(frozen=True)
class LatticeVerdict:
    is_lattice: bool
    reason: str  # "RationalAlpha" | "IrrationalAlpha"
    alpha: SurdValue


def alpha_gate(k: int, n: int) -> LatticeVerdict:
    """Decide lattice-ness of the (k,n) frame family from alpha alone.

    alpha = sqrt(k(n-1)/(n-k)).  Irrational alpha rules a lattice out; rational
    alpha makes the whole Gram rational, hence every frame coordinate rational,
    which certifies a full-rank lattice (the converse direction is re-verified
    constructively by lattice_test on each concrete frame).
    """
    if not 2 <= k < n:
        raise ValueError("need 2 <= k < n")
    alpha = sqrt_rational(F(k * (n - 1), n - k))
    rational = alpha.radicand == 1
    return LatticeVerdict(is_lattice=rational,
                          reason="RationalAlpha" if rational else "IrrationalAlpha",
                          alpha=alpha)


def lattice_test(spec: FrameSpec) -> CoordinateFrame:
    """Constructive lattice certificate: rational coordinates over a basis."""
    return coordinatize(spec)


def lattice_model(cf: CoordinateFrame) -> LatticeModel:
    return LatticeModel(k=cf.frame.k, gram=basis_gram(cf), coord_frame=cf)


def _pd_ldl(gram):
    try:
        dec = ldl_decompose(gram)
    except PivotBreakdownError as exc:
        raise NotPositiveDefiniteError("gram is not positive definite") from exc
    if not dec.is_positive_definite():
        raise NotPositiveDefiniteError("gram is not positive definite")
    return dec


def lattice_determinant(model: LatticeModel) -> SurdValue:
    """Exact sqrt(det gram) as coefficient times a squarefree radical."""
    _pd_ldl(model.gram)
    return sqrt_rational(bareiss_determinant(model.gram))


def _floor_sqrt_minus(r: Fraction, c: Fraction) -> int:
    # largest integer z with z + c <= sqrt(r); float seed, exact fix-up
    try:
        g = int(math.floor(math.sqrt(float(r)) - float(c)))
    except (OverflowError, ValueError):
        g = 0

    def le_sqrt(x):
        return x <= 0 or x * x <= r

    while le_sqrt(g + 1 + c):
        g += 1
    while not le_sqrt(g + c):
        g -= 1
    return g


def enumerate_short_vectors(model: LatticeModel, bound_sq) -> list:
    """All nonzero integer x with x'·gram·x <= bound_sq, exactly.

    Depth-first over coordinates x_{k-1}..x_0 with per-level intervals from
    the LDL' factorization.  One canonical representative per +- pair (first
    nonzero coordinate positive), sorted lexicographically.
    """
    gram = model.gram
    k = model.k
    dec = _pd_ldl(gram)
    low, diag = dec.unit_lower, dec.diag
    cols = [[low[i][j] for i in range(k)] for j in range(k)]
    bound = F(bound_sq)
    out = []
    x = [0] * k

    def descend(j: int, rem: Fraction) -> None:
        if j < 0:
            if any(x):
                out.append(tuple(x))
            return
        c = sum(cols[j][i] * x[i] for i in range(j + 1, k))
        s2 = rem / diag[j]
        lo = -_floor_sqrt_minus(s2, -c)
        hi = _floor_sqrt_minus(s2, c)
        for v in range(lo, hi + 1):
            x[j] = v
            descend(j - 1, rem - diag[j] * (v + c) ** 2)
        x[j] = 0

    descend(k - 1, bound)
    canon = set()
    for v in out:
        first = next(t for t in v if t)
        if first < 0:
            v = tuple(-t for t in v)
        canon.add(v)
    return sorted(canon)


def norm_sq(gram, x) -> Fraction:
    k = len(x)
    return sum(F(x[i]) * gram[i][j] * x[j] for i in range(k) for j in range(k))


def minimal_vectors(model: LatticeModel) -> MinVecReport:
    """Exact minimum norm and all attaining vectors.

    The enumeration bound is the smallest Gram diagonal entry — a valid upper
    bound for the minimum since unit coordinate vectors are lattice vectors
    (and equal to 1 on unit frames).
    """
    bound = min(model.gram[i][i] for i in range(model.k))
    short = enumerate_short_vectors(model, bound)
    norms = [norm_sq(model.gram, v) for v in short]
    least = min(norms)
    vecs = [v for v, t in zip(short, norms) if t == least]
    return MinVecReport(min_norm_sq=least, vectors=vecs,
                        count_with_signs=2 * len(vecs))


def _canonical(v) -> tuple:
    first = next((t for t in v if t), 0)
    if first < 0:
        return tuple(-t for t in v)
    return tuple(v)


def frame_coordinate_columns(cf: CoordinateFrame):
    """Coordinates of all n frame vectors over the basis, if integral.

    Returns the canonical +-representatives (basis unit vectors plus the
    coordinate columns), or None when some frame vector has a non-integer
    coordinate and therefore is not a lattice point of the basis lattice.
    """
    k, n = cf.frame.k, cf.frame.n
    cols = []
    for t in range(k):
        cols.append(tuple(1 if i == t else 0 for i in range(k)))
    for jj in range(n - k):
        col = [F(cf.coords[i][jj]) for i in range(k)]
        if any(v.denominator != 1 for v in col):
            return None
        cols.append(_canonical([int(v) for v in col]))
    return cols


def frame_vectors_are_minimal(model: LatticeModel, report: MinVecReport) -> bool:
    """True iff the minimal vectors are exactly +- the frame vectors."""
    if model.coord_frame is None:
        return False
    cols = frame_coordinate_columns(model.coord_frame)
    if cols is None:
        return False
    return set(report.vectors) == set(cols)


def has_basis_of_minimal_vectors(model: LatticeModel, report: MinVecReport,
                                 cap: int = 10 ** 6) -> bool:
    """Whether k minimal vectors generate the whole lattice (determinant +-1).

    The identity sub-basis is checked first; every frame family built here
    resolves there.  Otherwise k-subsets are tried with exact determinants,
    up to `cap` evaluations.
    """
    k = model.k
    vecs = report.vectors
    units = {tuple(1 if i == t else 0 for i in range(k)) for t in range(k)}
    if units <= set(vecs):
        return True
    budget = cap
    for subset in combinations(vecs, k):
        budget -= 1
        if budget < 0:
            raise SearchBudgetExceededError(f"exceeded {cap} determinant evaluations")
        if abs(bareiss_determinant([list(v) for v in subset])) == 1:
            return True
    return False


def brute_force_short_vectors(model: LatticeModel, bound_sq) -> list:
    """Certified box-scan oracle for enumerate_short_vectors.

    Coordinates are bounded by the dual certificate |x_i| <= sqrt(bound ·
    (Q^{-1})_ii), valid because x_i = e_i' Q^{-1} (Qx) and Cauchy-Schwarz in
    the Q-inner product gives x_i² <= (Q^{-1})_ii · x'Qx.  The scan is done
    with integer matrices in numpy after clearing denominators.
    """
    gram = model.gram
    k = model.k
    _pd_ldl(gram)
    bound = F(bound_sq)
    inv = mat_inverse(gram)
    radii = [floor_sqrt(bound * inv[i][i]) for i in range(k)]

    den = math.lcm(bound.denominator,
                   *[F(gram[i][j]).denominator for i in range(k) for j in range(k)])
    q_int = np.array([[int(F(gram[i][j]) * den) for j in range(k)] for i in range(k)],
                     dtype=np.int64)
    bound_int = int(bound * den)

    axes = [np.arange(-r, r + 1, dtype=np.int64) for r in radii]
    grid = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([g.ravel() for g in grid], axis=1)
    vals = np.einsum("ni,ij,nj->n", pts, q_int, pts)
    keep = pts[(vals <= bound_int) & np.any(pts != 0, axis=1)]
    canon = {_canonical([int(t) for t in row]) for row in keep}
    return sorted(canon)


def packing_density(model: LatticeModel, report: MinVecReport) -> float:
    """Sphere-packing density; the one deliberately floating-point quantity."""
    k = model.k
    omega = math.pi ** (k / 2) / math.gamma(k / 2 + 1)
    d = math.sqrt(float(report.min_norm_sq))
    det = float(lattice_determinant(model))
    return omega * d ** k / (2 ** k * det)


def scalar_orthogonal_equivalence(q1: Mat, q2: Mat):
    """c² with q1 = c²·q2 entrywise, or None.

    For basis matrices X, Y with Grams q1, q2 this is exactly the relation
    "X·Y^{-1} is a nonzero scalar multiple of an orthogonal matrix".
    """
    k = len(q1)
    if len(q2) != k or any(len(r) != k for r in q1) or any(len(r) != k for r in q2):
        raise SizeMismatchError("grams differ in size")
    ratio = None
    for i in range(k):
        for j in range(k):
            if q2[i][j] != 0:
                ratio = F(q1[i][j]) / F(q2[i][j])
                break
        if ratio is not None:
            break
    if ratio is None or ratio <= 0:
        return None
    for i in range(k):
        for j in range(k):
            if F(q1[i][j]) != ratio * F(q2[i][j]):
                return None
    return ratio


def equivalence_classes(grams: list) -> list:
    """Partition indices 0..len-1 under scalar-orthogonal equivalence,
    classes ordered by smallest member."""
    classes: list[list[int]] = []
    for i, g in enumerate(grams):
        for cls in classes:
            if scalar_orthogonal_equivalence(g, grams[cls[0]]) is not None:
                cls.append(i)
                break
        else:
            classes.append([i])
    return classes


def non_lattice_witness_3_6(steps: int) -> list:
    """Ever-shorter nonzero vectors in the icosahedral frame's integer span.

    Walks the continued-fraction convergents x/y of the golden ratio
    p = (1+sqrt 5)/2 (so x = -Fib(n+1), y = Fib(n)), forms the integer
    combination (x+y, y-x, y, y, x, -x) of the six frame vectors, whose
    squared length is 8(x+py)²/(1+p²) — strictly decreasing and -> 0,
    so the span is not discrete and no lattice exists.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    p = (1 + math.sqrt(5)) / 2
    out = []
    x, y = -1, 1
    for _ in range(steps):
        coeffs = (x + y, y - x, y, y, x, -x)
        err = x + p * y
        norm = 8 * err * err / (1 + p * p)
        out.append((coeffs, norm))
        x, y = -(abs(x) + y), abs(x)
    return out
