"""Search for flat vectors and turn them into certified cotype lower bounds.

A *flat* vector is a nonnegative x whose base norm ||x||_T is small relative
to its tail mass sum_{j>=3} x_j.  Flat vectors exist at every scale in this
space, and each one certifies, through the 2-convexified norm, a lower bound
on the cotype-2 constant (hence on the Euclidean distortion) of the
coordinate span containing it.

The search is a cutting-plane loop: the norm is the max of finitely many
linear functionals on the nonnegative orthant (one per certificate tree), so
minimizing it under the normalization sum_{j>=3} x_j = 1 reduces to a linear
program over the functionals discovered so far.  Each round solves the LP
exactly, evaluates the true norm at the LP optimum, and, if the LP
undershoots, adds the maximizing certificate's functional as a new cut.  The
LP value is a lower bound and the incumbent norm an upper bound at every
round; with finitely many functionals and every added cut violated by the
current optimum, the loop reaches LP value == true norm in finitely many
rounds.

The certified ratio this module reports is the exact sign-averaged cotype
ratio sum_j x_j / ||x||_T (unconditionality makes every sign pattern equal),
giving c2 >= sqrt(ratio).  The classical construction behind these witnesses
claims the stronger bound 2^k/k on supports of size g_k(2); that claimed
figure is surfaced as metadata only, never asserted by the computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadSupportBound, NegativeEntry, ZeroTail
from .growth import ackermann_g
from .seqvec import FinVec, Rat
from .simplex import solve_lp
from .tsirelson import NormCertificate, norming_functional, tsirelson_norm

__all__ = [
    "FlatWitness",
    "CotypeCertificate",
    "FlatSearchResult",
    "flatness",
    "search_flat",
    "cotype_certificate_from_witness",
]

MIN_SUPPORT_BOUND = 3
MAX_SUPPORT_BOUND = 16


@dataclass(frozen=True)
class FlatWitness:
    """Nonnegative vector with its flatness ratio and a norm certificate."""

    x: FinVec
    N: int
    theta: Rat
    certificate: NormCertificate


@dataclass(frozen=True)
class FlatSearchResult:
    witness: FlatWitness
    rounds: int
    lp_value: Rat
    converged: bool
    pool: tuple[FinVec, ...]


@dataclass(frozen=True)
class CotypeCertificate:
    """Exact cotype ratio of the diagonal family {sqrt(x_j) e_j} in the
    2-convexified span of e_1..e_N.

    ``witness_sq`` holds the squares x_j (the conceptual family entries are
    their square roots, which are irrational in general).  ``claimed_c2_lower``
    carries the construction's asserted 2^k/k figure when N = g_k(2); it is
    not certified by this computation.
    """

    N: int
    witness_sq: FinVec
    ratio: Rat
    c2_lower: float
    claimed_c2_lower: float | None
    claimed_note: str


def _tail_sum(x: FinVec) -> Rat:
    return sum((v for j, v in x.items() if j >= 3), Fraction(0))


def flatness(x: FinVec) -> Rat:
    """theta(x) = ||x||_T / sum_{j>=3} x_j for nonnegative x."""
    for j, v in x.items():
        if v < 0:
            raise NegativeEntry(f"entry {j} is {v} < 0")
    tail = _tail_sum(x)
    if tail == 0:
        raise ZeroTail("sum of entries at indices >= 3 is zero")
    return tsirelson_norm(x).value / tail


def search_flat(N: int, max_rounds: int = 200) -> FlatSearchResult:
    """Minimize ||x||_T over x >= 0 supported in [1, N] with sum_{j>=3} x_j = 1.

    Returns the best witness found; ``converged`` reports whether the LP
    value met the true norm within the round budget.
    """
    if not MIN_SUPPORT_BOUND <= N <= MAX_SUPPORT_BOUND:
        raise BadSupportBound(f"N must lie in [{MIN_SUPPORT_BOUND}, {MAX_SUPPORT_BOUND}]")

    # seed pool: coordinate functionals <e_j, |x|> <= ||x||_T
    pool: list[FinVec] = [FinVec.basis(j) for j in range(1, N + 1)]
    seen = {lam for lam in pool}

    c = [Fraction(0)] * N + [Fraction(1)]  # minimize t
    tail_row = [Fraction(1) if j >= 3 else Fraction(0) for j in range(1, N + 1)]
    tail_row.append(Fraction(0))

    incumbent: tuple[FinVec, Rat, NormCertificate] | None = None
    lp_value = Fraction(0)
    rounds = 0
    converged = False
    while rounds < max_rounds:
        rounds += 1
        A_ub = [[lam[j] for j in range(1, N + 1)] + [Fraction(-1)] for lam in pool]
        b_ub = [Fraction(0)] * len(pool)
        res = solve_lp(c, A_ub=A_ub, b_ub=b_ub, A_eq=[tail_row], b_eq=[Fraction(1)])
        if res.status != "optimal":  # cannot happen: LP is feasible and bounded
            raise RuntimeError(f"master LP came back {res.status}")
        lp_value = res.objective
        xvec = FinVec({j + 1: res.x[j] for j in range(N)})
        nr = tsirelson_norm(xvec)
        if incumbent is None or nr.value < incumbent[1]:
            incumbent = (xvec, nr.value, nr.certificate)
        if nr.value == lp_value:
            converged = True
            break
        lam = norming_functional(nr.certificate)
        if lam in seen:  # the cut is violated by x*, so this cannot happen
            break
        seen.add(lam)
        pool.append(lam)

    x_best, norm_best, cert_best = incumbent
    theta = norm_best / _tail_sum(x_best)
    witness = FlatWitness(x_best, N, theta, cert_best)
    return FlatSearchResult(witness, rounds, lp_value, converged, tuple(pool))


def _claimed_bound(n: int) -> tuple[float | None, str]:
    """2^k/k when n equals g_k(2) for some k >= 1."""
    k = 1
    while True:
        g = ackermann_g(k, 2, cap=max(n, 2))
        if g.exceeded or g.value > n:
            return None, ""
        if g.value == n:
            return 2.0**k / k, "claimed by the flat-vector construction at scale k=%d; not certified here" % k
        k += 1


def cotype_certificate_from_witness(witness: FlatWitness) -> CotypeCertificate:
    """Exact cotype ratio of the family {sqrt(x_j) e_j} in the 2-convexified span.

    Unconditionality makes every sign pattern of the family sum have squared
    norm ||sum_j x_j e_j||_T, so the sign average is exact:

        ratio = (sum_j x_j) / ||x||_T,       c2 >= sqrt(ratio).
    """
    x = witness.x
    for j, v in x.items():
        if v < 0:
            raise NegativeEntry(f"entry {j} is {v} < 0")
    total = sum((v for _, v in x.items()), Fraction(0))
    denom = tsirelson_norm(x).value
    if denom == 0:
        raise ZeroTail("zero witness has no cotype content")
    ratio = total / denom
    claimed, note = _claimed_bound(witness.N)
    return CotypeCertificate(
        N=witness.N,
        witness_sq=x,
        ratio=ratio,
        c2_lower=math.sqrt(float(ratio)),
        claimed_c2_lower=claimed,
        claimed_note=note,
    )
