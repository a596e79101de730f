"""Random-projection embeddings, distortion measurement, and the Walsh
point-set experiment connecting embeddability to type/cotype.

``jl_embed`` draws a dense Gaussian map into ceil(C ln(n) / eps^2) dimensions
and rescales it so the smallest pairwise ratio is exactly 1 (the one-sided
normalization ||x - y|| <= ||L x - L y||), retrying until the distortion
meets 1 + eps.

The Walsh machinery builds the adversarial point sets: given base vectors
x_A indexed by the subsets A of {1..m} and Gaussian weights g_A, the function

    Phi_g(eps) = sum_A g_A W_A(eps) x_A,        W_A(eps) = prod_{i in A} eps_i

is sampled at all 2^m sign vectors.  Because the Walsh characters are
orthonormal, any *linear* map into Euclidean space satisfies the exact
identity mean_eps ||sum_A W_A(eps) z_A||_2^2 = sum_A ||z_A||_2^2, which is
what turns a low-distortion linear embedding of the point set into a bound
on the sign-averaged functional - the mechanism probed by
``jl_mechanism_experiment``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    AllPointsCoincide,
    BadEpsilon,
    DomainError,
    EmbeddingFailed,
    MTooLarge,
    RatioUndefined,
)
from .gauss import SpaceOracle
from .seeds import derive_seed

__all__ = [
    "PointSet",
    "LinearMap",
    "DistortionReport",
    "WalshEnsemble",
    "WalshOrthogonality",
    "MechanismTrial",
    "MechanismReport",
    "fwht",
    "jl_embed",
    "distortion_of_map",
    "walsh_pointset",
    "walsh_orthogonality_check",
    "jl_mechanism_experiment",
]

WALSH_M_CAP = 16
MECHANISM_M_CAP = 12


@dataclass(frozen=True)
class PointSet:
    """Finite list of coordinate vectors; ambient None means plain Euclidean."""

    points: np.ndarray
    ambient: SpaceOracle | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", np.asarray(self.points, dtype=float))
        if self.points.ndim != 2:
            raise DomainError("points must form an (n, dim) array")

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class LinearMap:
    """Dense matrix with a separate positive scale: x -> scale * (matrix @ x)."""

    matrix: np.ndarray
    scale: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrix", np.asarray(self.matrix, dtype=float))
        if self.matrix.ndim != 2 or self.matrix.shape[0] < 1:
            raise DomainError("matrix must be (target_dim, source_dim) with target_dim >= 1")
        if not self.scale > 0:
            raise DomainError("scale must be > 0")

    @property
    def target_dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def source_dim(self) -> int:
        return self.matrix.shape[1]

    def apply(self, points: np.ndarray) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        return self.scale * (pts @ self.matrix.T)


@dataclass(frozen=True)
class DistortionReport:
    min_ratio: float
    max_ratio: float
    distortion: float
    argmin: tuple[int, int]
    argmax: tuple[int, int]


def _euclidean_pdists(pts: np.ndarray) -> np.ndarray:
    """Condensed upper-triangle pairwise Euclidean distances.

    Uses the Gram identity for speed; distances between exactly identical
    rows are forced to 0 so duplicate points never yield roundoff ratios.
    """
    sq = np.sum(pts * pts, axis=1)
    d2 = sq[:, None] + sq[None, :] - 2.0 * (pts @ pts.T)
    np.clip(d2, 0.0, None, out=d2)
    iu, ju = np.triu_indices(len(pts), k=1)
    out = np.sqrt(d2[iu, ju])
    _, inv = np.unique(pts, axis=0, return_inverse=True)
    inv = inv.reshape(-1)
    out[inv[iu] == inv[ju]] = 0.0
    return out


_PAIR_CHUNK = 1 << 18


def _pair_norms(pts: np.ndarray, oracle: SpaceOracle | None) -> np.ndarray:
    if oracle is None:
        return _euclidean_pdists(pts)
    iu, ju = np.triu_indices(len(pts), k=1)
    out = np.empty(len(iu))
    for lo in range(0, len(iu), _PAIR_CHUNK):
        hi = lo + _PAIR_CHUNK
        diffs = pts[iu[lo:hi]] - pts[ju[lo:hi]]
        out[lo:hi] = oracle.norm_array(diffs)
    return out


def _ratio_report(src: np.ndarray, tgt: np.ndarray, n: int) -> DistortionReport:
    iu, ju = np.triu_indices(n, k=1)
    keep = ~((src == 0) & (tgt == 0))  # drop duplicate points
    if not np.any(keep):
        raise AllPointsCoincide("no distinct pair of points")
    bad = (src == 0) & (tgt > 0)
    if np.any(bad):
        k = int(np.flatnonzero(bad)[0])
        raise RatioUndefined(
            f"points {int(iu[k])} and {int(ju[k])} coincide in the source norm "
            "but not in the target"
        )
    ratios = tgt[keep] / src[keep]
    ik, jk = iu[keep], ju[keep]
    a_min, a_max = int(np.argmin(ratios)), int(np.argmax(ratios))
    min_r, max_r = float(ratios[a_min]), float(ratios[a_max])
    return DistortionReport(
        min_ratio=min_r,
        max_ratio=max_r,
        distortion=max_r / min_r if min_r > 0 else math.inf,
        argmin=(int(ik[a_min]), int(jk[a_min])),
        argmax=(int(ik[a_max]), int(jk[a_max])),
    )


def distortion_of_map(points: PointSet, lmap: LinearMap,
                      source_norm: SpaceOracle | None = None,
                      target_norm: SpaceOracle | None = None) -> DistortionReport:
    """Exact pairwise ratio extremes || L x_i - L x_j ||_target / || x_i - x_j ||_source.

    Duplicate points (zero in both norms) are skipped; a pair at source
    distance 0 with positive target distance raises RatioUndefined.
    """
    pts = points.points
    if len(pts) < 2:
        raise AllPointsCoincide("need at least two points")
    src = _pair_norms(pts, source_norm)
    tgt = _pair_norms(lmap.apply(pts), target_norm)
    return _ratio_report(src, tgt, len(pts))


def jl_embed(points: PointSet | np.ndarray, eps: float, constant: float = 8.0,
             seed: int = 0, max_retries: int = 100) -> tuple[LinearMap, DistortionReport]:
    """Random projection into d = ceil(constant * ln(n) / eps^2) dimensions
    (capped at the source dimension).

    Each draw orthonormalizes a Gaussian matrix, i.e. the map is a multiple
    of a uniformly random orthogonal projection scaled by sqrt(D/d).  When d
    is a sizable fraction of D this concentrates markedly better than raw
    i.i.d. Gaussian entries, whose extra spectral spread would miss the
    1 + eps target at the default operating point.  After each draw the map
    is rescaled so the smallest pairwise ratio is exactly 1, and the draw is
    accepted when the distortion is at most 1 + eps.  Raises EmbeddingFailed
    (carrying the best attempt) when the retry budget runs out.
    """
    if not 0 < eps <= 1:
        raise BadEpsilon(f"eps must lie in (0, 1], got {eps}")
    pts = points.points if isinstance(points, PointSet) else np.asarray(points, dtype=float)
    n, source_dim = pts.shape
    if n < 2:
        raise AllPointsCoincide("need at least two points")
    d = min(max(1, math.ceil(constant * math.log(n) / eps**2)), source_dim)
    src = _euclidean_pdists(pts)
    rng = np.random.default_rng(seed)
    best: tuple[float, LinearMap, DistortionReport] | None = None
    for _ in range(max_retries):
        G = rng.standard_normal((source_dim, d))
        Q, _ = np.linalg.qr(G)
        M = math.sqrt(source_dim / d) * Q.T
        raw = LinearMap(M, 1.0)
        tgt = _euclidean_pdists(raw.apply(pts))
        rep = _ratio_report(src, tgt, n)
        if rep.min_ratio <= 0:
            continue  # degenerate draw; cannot normalize
        scale = 1.0 / rep.min_ratio
        normalized = LinearMap(M, scale)
        report = DistortionReport(
            min_ratio=1.0,
            max_ratio=rep.distortion,
            distortion=rep.distortion,
            argmin=rep.argmin,
            argmax=rep.argmax,
        )
        if best is None or report.distortion < best[0]:
            best = (report.distortion, normalized, report)
        if report.distortion <= 1.0 + eps:
            return normalized, report
    assert best is not None
    raise EmbeddingFailed(
        f"no draw met distortion {1 + eps:g} within {max_retries} retries "
        f"(best attempt {best[0]:.6g})",
        best_map=best[1],
        best_report=best[2],
    )


# --------------------------------------------------------------------------
# Walsh ensembles
# --------------------------------------------------------------------------

def fwht(a: np.ndarray) -> np.ndarray:
    """Unnormalized Walsh-Hadamard transform along axis 0.

    Row e of the result equals sum_a (-1)^{popcount(e & a)} * input[a]: with
    sign vectors encoded as bitmasks of their -1 positions, this evaluates
    all 2^m Walsh-weighted sums at once.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if n & (n - 1):
        raise DomainError(f"length {n} is not a power of 2")
    h = 1
    while h < n:
        for start in range(0, n, 2 * h):
            x = a[start : start + h].copy()
            y = a[start + h : start + 2 * h]
            a[start : start + h] = x + y
            a[start + h : start + 2 * h] = x - y
        h *= 2
    return a


@dataclass(frozen=True)
class WalshEnsemble:
    """Base vectors indexed by subsets of {1..m} plus Gaussian weights.

    Subset A <-> bitmask a; sign vector eps <-> bitmask e of its -1 entries,
    so W_A(eps) = (-1)^{popcount(a & e)}.
    """

    m: int
    base: np.ndarray       # (2^m, dim)
    gaussians: np.ndarray  # (2^m,)
    seed: int = 0

    def __post_init__(self) -> None:
        if self.m < 1:
            raise DomainError("m must be >= 1")
        if self.base.shape[0] != 1 << self.m or self.gaussians.shape != (1 << self.m,):
            raise DomainError("need exactly 2^m base vectors and 2^m gaussians")

    @classmethod
    def from_vectors(cls, vectors: Sequence[Sequence[float]], seed: int = 0,
                     m: int | None = None) -> "WalshEnsemble":
        """Pad a finite family with zero vectors up to the next power of two."""
        V = np.asarray([[float(e) for e in v] for v in vectors], dtype=float)
        if V.ndim != 2 or len(V) < 1:
            raise DomainError("need at least one vector")
        if m is None:
            m = max(1, math.ceil(math.log2(len(V))))
        if len(V) > 1 << m:
            raise DomainError(f"{len(V)} vectors do not fit in 2^{m}")
        base = np.zeros((1 << m, V.shape[1]))
        base[: len(V)] = V
        g = np.random.default_rng(seed).standard_normal(1 << m)
        return cls(m, base, g, seed)


def walsh_pointset(ensemble: WalshEnsemble) -> PointSet:
    """All 2^m values of Phi_g, the 2^m base vectors, and the origin."""
    if ensemble.m > WALSH_M_CAP:
        raise MTooLarge(f"m={ensemble.m} exceeds cap {WALSH_M_CAP}")
    weighted = ensemble.gaussians[:, None] * ensemble.base
    phi = fwht(weighted)
    zero = np.zeros((1, ensemble.base.shape[1]))
    return PointSet(np.vstack([phi, ensemble.base, zero]))


@dataclass(frozen=True)
class WalshOrthogonality:
    passed: bool
    residual: float
    lhs: float
    rhs: float


def walsh_orthogonality_check(m: int, z: np.ndarray, tol: float = 1e-10) -> WalshOrthogonality:
    """Verify mean_eps || sum_A W_A(eps) z_A ||_2^2 == sum_A || z_A ||_2^2.

    The identity is exact for real inputs; the reported relative residual is
    pure float roundoff.
    """
    if m > WALSH_M_CAP:
        raise MTooLarge(f"m={m} exceeds cap {WALSH_M_CAP}")
    z = np.asarray(z, dtype=float)
    if z.shape[0] != 1 << m:
        raise DomainError(f"need 2^{m} rows, got {z.shape[0]}")
    sums = fwht(z)
    lhs = float(np.mean(np.sum(sums * sums, axis=1)))
    rhs = float(np.sum(z * z))
    residual = abs(lhs - rhs) / max(1.0, abs(rhs))
    return WalshOrthogonality(residual <= tol, residual, lhs, rhs)


# --------------------------------------------------------------------------
# Mechanism experiment
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class MechanismTrial:
    trial: int
    lhs: float
    rhs: float
    ratio: float
    d_composite: float
    d_jl: float
    delta_proxy: float
    target_dim: int
    point_count: int


@dataclass(frozen=True)
class MechanismReport:
    trials: tuple[MechanismTrial, ...]
    max_ratio: float | None
    mean_lhs: float | None
    m: int
    space_tag: str
    note: str = field(
        default="source points are embedded through their coordinates "
        "(Euclidean proxy); constants are measured, not optimized"
    )


def jl_mechanism_experiment(space: SpaceOracle, vectors: Sequence[Sequence[float]],
                            eps: float = 0.5, constant: float = 8.0, seed: int = 0,
                            trials: int = 10, mc_retries: int = 100) -> MechanismReport:
    """Probe the inequality that caps sign-averaged functionals via embeddability.

    Per trial: draw Gaussian weights, build the Walsh point set U_g, embed its
    coordinates with ``jl_embed``, and measure the composite bi-Lipschitz
    constant D of (space norm -> embedded Euclidean) over U_g, normalized so
    the lower ratio is 1.  Then

        lhs = mean_eps ||Phi_g(eps)||^2   <=   D^2 * sum_A g_A^2 ||x_A||^2 = rhs

    is a theorem for the measured D (Walsh orthogonality holds exactly in the
    Euclidean target), so ratio = lhs/rhs must stay <= 1 up to float noise;
    any violation is an implementation bug.  D plays the role of the product
    of the embedding distortion and the target's Euclidean distortion in the
    recursive bound; both factors are also reported separately.
    """
    V = np.asarray([[float(e) for e in v] for v in vectors], dtype=float)
    if V.shape[1] != space.dim:
        raise DomainError("family vectors do not match the space dimension")
    m = max(1, math.ceil(math.log2(len(V))))
    if m > MECHANISM_M_CAP:
        raise MTooLarge(f"padded family needs m={m} > cap {MECHANISM_M_CAP}")
    rows: list[MechanismTrial] = []
    for t in range(trials):
        ens = WalshEnsemble.from_vectors(V, seed=derive_seed(seed, "walsh-g", t), m=m)
        pset = walsh_pointset(ens)
        pts = pset.points
        lmap, rep = jl_embed(pts, eps, constant, seed=derive_seed(seed, "jl", t),
                             max_retries=mc_retries)
        # composite: space norm on the source, Euclidean on the image
        src = _pair_norms(pts, space)
        tgt = _euclidean_pdists(lmap.apply(pts))
        comp = _ratio_report(src, tgt, len(pts))
        d_comp = comp.distortion
        # proxy spread: how non-Euclidean the space norm is on these pairs
        e_src = _euclidean_pdists(pts)
        proxy = _ratio_report(src, e_src, len(pts)).distortion
        two_m = 1 << ens.m
        norms = space.norm_array(pts[:two_m])  # Phi values are the first 2^m rows
        lhs = float(np.mean(norms**2))
        base_norms = space.norm_array(ens.base)
        rhs = d_comp**2 * float(np.sum(ens.gaussians**2 * base_norms**2))
        rows.append(
            MechanismTrial(
                trial=t,
                lhs=lhs,
                rhs=rhs,
                ratio=lhs / rhs if rhs > 0 else math.inf,
                d_composite=d_comp,
                d_jl=rep.distortion,
                delta_proxy=proxy,
                target_dim=lmap.target_dim,
                point_count=len(pts),
            )
        )
    max_ratio = max((r.ratio for r in rows), default=None)
    mean_lhs = float(np.mean([r.lhs for r in rows])) if rows else None
    return MechanismReport(tuple(rows), max_ratio, mean_lhs, m, space.tag)
