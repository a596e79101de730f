"""Exact evaluation of the Tsirelson-type norms with verifiable certificates.

The base norm ``T`` is the fixed point of the recursion

    ||x|| = max( max_j |x_j|,
                 1/2 * sup { sum_j ||P_{A_j} x|| } )

where the sup ranges over finite families A_1 < A_2 < ... < A_n of finite
index sets with n < min A_1 (writing A < B for max A < min B).  Splits with
fewer than two nonempty parts can never attain the max (they contribute at
most half the norm of a restriction), so skipping them makes the recursion
terminate and this module computes the fixed point directly.

Three engines live here:

* ``tsirelson_norm`` -- a dynamic program over successive support intervals.
  Fattening each A_j to an interval can only increase its term while
  preserving admissibility (the norm is 1-unconditional and monotone under
  restriction), so intervals suffice; the reduction is cross-checked against
  the all-subsets oracle rather than assumed.
* ``tsirelson_norm_bruteforce`` -- exhaustive recursion over *all* admissible
  families of arbitrary finite subsets, memoized on support bitmasks.  Slow,
  capped, and deliberately independent of the interval argument.
* ``modified_norm`` -- the variant whose recursion allows up to (n+1)^n
  pairwise disjoint (not successive) finite sets inside [n, oo); here the
  left endpoint n itself is allowed.  Disjoint arbitrary sets defeat the
  interval DP, so this engine is exhaustive and capped.

All engines run on integer-scaled values: every value appearing in the
recursion is a dyadic multiple of the input entries with halving depth at
most support-1, so after multiplying by lcm(denominators) * 2^(s-1) the whole
computation stays in Python ints.  Results are exact ``Fraction`` values.

A ``NormCertificate`` is one unfolding of the recursion's sup: a tree whose
leaves name coordinates and whose splits record the family intervals.  Its
value (leaf -> |x_j|, split -> half the sum of the children) is a certified
lower bound for ||x||_T of *any* vector, which is what makes certificates
usable as cutting planes (see ``norming_functional``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import MalformedCertificate, SupportTooLarge
from .seqvec import FinVec, Rat, abs_square

__all__ = [
    "Leaf",
    "Part",
    "Split",
    "NormCertificate",
    "EvalStats",
    "NormResult",
    "tsirelson_norm",
    "tsirelson_norm_bruteforce",
    "t2_norm_sq",
    "t2_norm",
    "modified_norm",
    "modified_t2_norm_sq",
    "certificate_value",
    "validate_certificate",
    "norming_functional",
    "certificate_to_json",
    "certificate_from_json",
]


# --------------------------------------------------------------------------
# Certificates
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    """Terminal node: pick coordinate ``index``."""

    index: int


@dataclass(frozen=True)
class Part:
    """One member of a split family: the index interval [lo, hi] and its subtree."""

    lo: int
    hi: int
    child: "CertNode"


@dataclass(frozen=True)
class Split:
    """An admissible family with threshold n: intervals above n, at most n of them."""

    n: int
    parts: tuple[Part, ...]


CertNode = Union[Leaf, Split]


@dataclass(frozen=True)
class NormCertificate:
    """A certificate tree together with the value it claims."""

    root: CertNode
    value: Rat


@dataclass(frozen=True)
class EvalStats:
    memo_entries: int
    expansions: int


@dataclass(frozen=True)
class NormResult:
    value: Rat
    certificate: NormCertificate
    stats: EvalStats


def _check_node(node: CertNode, ancestors: tuple[tuple[int, int], ...]) -> None:
    if isinstance(node, Leaf):
        if not isinstance(node.index, int) or node.index < 1:
            raise MalformedCertificate(f"leaf index {node.index!r} must be a positive integer")
        for lo, hi in ancestors:
            if not lo <= node.index <= hi:
                raise MalformedCertificate(
                    f"leaf index {node.index} escapes ancestor interval [{lo}, {hi}]"
                )
        return
    if isinstance(node, Split):
        if not isinstance(node.n, int) or node.n < 1:
            raise MalformedCertificate(f"split threshold {node.n!r} must be a positive integer")
        if not node.parts:
            raise MalformedCertificate("split with no parts")
        if len(node.parts) > node.n:
            raise MalformedCertificate(
                f"split has {len(node.parts)} parts but threshold n={node.n} allows at most n"
            )
        prev_hi = node.n  # enforces min of first interval > n
        for part in node.parts:
            if part.lo > part.hi:
                raise MalformedCertificate(f"empty interval [{part.lo}, {part.hi}]")
            if part.lo <= prev_hi:
                raise MalformedCertificate(
                    f"interval [{part.lo}, {part.hi}] not strictly above {prev_hi}"
                )
            prev_hi = part.hi
        for part in node.parts:
            _check_node(part.child, ancestors + ((part.lo, part.hi),))
        return
    raise MalformedCertificate(f"unknown certificate node {node!r}")


def _node_value(node: CertNode, x: FinVec) -> Rat:
    if isinstance(node, Leaf):
        return abs(x[node.index])
    return sum((_node_value(p.child, x) for p in node.parts), Fraction(0)) / 2


def certificate_value(cert: NormCertificate | CertNode, x: FinVec) -> Rat:
    """Evaluate a certificate tree on ``x`` after checking its structure.

    Raises MalformedCertificate if any structural invariant fails.  For a
    well-formed tree the returned value is a lower bound for ||x||_T.
    """
    node = cert.root if isinstance(cert, NormCertificate) else cert
    _check_node(node, ())
    return _node_value(node, x)


def validate_certificate(cert: NormCertificate, x: FinVec) -> bool:
    """True iff the tree is well formed, reproduces the claimed value on ``x``,
    and does not exceed the true norm."""
    try:
        val = certificate_value(cert, x)
    except MalformedCertificate:
        return False
    return val == cert.value and val <= tsirelson_norm(x).value


def norming_functional(cert: NormCertificate | CertNode) -> FinVec:
    """Linearize a certificate: coefficient 2^(-depth) at each leaf index.

    The result lam satisfies sum_j lam_j * |z_j| = certificate_value(cert, z)
    for every z, hence <lam, |z|> <= ||z||_T: a reusable dual certificate.
    """
    node = cert.root if isinstance(cert, NormCertificate) else cert
    _check_node(node, ())
    coeffs: dict[int, Rat] = {}

    def walk(nd: CertNode, depth: int) -> None:
        if isinstance(nd, Leaf):
            if nd.index in coeffs:
                raise MalformedCertificate(f"duplicate leaf index {nd.index}")
            coeffs[nd.index] = Fraction(1, 2**depth)
        else:
            for part in nd.parts:
                walk(part.child, depth + 1)

    walk(node, 0)
    return FinVec(coeffs)


# -- certificate JSON: {"leaf": 5} / {"split": {"n":, "parts":[{"lo","hi","child"}]}}

def _node_to_json(node: CertNode) -> dict:
    if isinstance(node, Leaf):
        return {"leaf": node.index}
    return {
        "split": {
            "n": node.n,
            "parts": [
                {"lo": p.lo, "hi": p.hi, "child": _node_to_json(p.child)} for p in node.parts
            ],
        }
    }


def _node_from_json(obj: dict) -> CertNode:
    if "leaf" in obj:
        return Leaf(int(obj["leaf"]))
    if "split" in obj:
        sp = obj["split"]
        parts = tuple(
            Part(int(p["lo"]), int(p["hi"]), _node_from_json(p["child"])) for p in sp["parts"]
        )
        return Split(int(sp["n"]), parts)
    raise MalformedCertificate(f"unrecognized certificate node {obj!r}")


def certificate_to_json(cert: NormCertificate) -> dict:
    return {"value": str(cert.value), "tree": _node_to_json(cert.root)}


def certificate_from_json(obj: dict) -> NormCertificate:
    return NormCertificate(_node_from_json(obj["tree"]), Fraction(str(obj["value"])))


# --------------------------------------------------------------------------
# Shared integer scaling
# --------------------------------------------------------------------------

def _scaled_weights(x: FinVec) -> tuple[tuple[int, ...], list[int], int]:
    """Support, |entries| scaled to ints, and the scale factor.

    Scale = lcm of entry denominators * 2^(s-1): every value of the norm
    recursion has halving depth < s, so all scaled values are integers and
    every scaled part value inside a split is even (parts are strictly
    smaller, so they carry at least one spare factor of 2).
    """
    sup = x.support()
    s = len(sup)
    lcm = 1
    for _, v in x.items():
        lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    scale = lcm << max(0, s - 1)
    weights = [int(abs(x[j]) * scale) for j in sup]
    return sup, weights, scale


# --------------------------------------------------------------------------
# Interval dynamic program
# --------------------------------------------------------------------------

def tsirelson_norm(x: FinVec) -> NormResult:
    """Exact ||x||_T with a certificate attaining it.

    Subproblems are contiguous ranges of the support; each range takes the
    max of its best single coordinate and, over every admissible threshold,
    half the best partition of the allowed tail into successive intervals.
    For tail start index b the largest admissible threshold is n = b - 1
    (larger part budgets only help), which is the only n worth trying.
    """
    sup, w, scale = _scaled_weights(x)
    s = len(sup)
    if s == 0:
        zero = Fraction(0)
        return NormResult(zero, NormCertificate(Leaf(1), zero), EvalStats(0, 0))

    imemo: dict[tuple[int, int], tuple[int, CertNode]] = {}
    cmemo: dict[tuple[int, int, int], tuple[int, int | None]] = {}
    expansions = 0

    def interval(i: int, j: int) -> tuple[int, CertNode]:
        key = (i, j)
        hit = imemo.get(key)
        if hit is not None:
            return hit
        nonlocal expansions
        expansions += 1
        # leaf branch
        best_p = max(range(i, j + 1), key=lambda q: w[q])
        best_v = w[best_p]
        best_node: CertNode = Leaf(sup[best_p])
        # split branches: first block starts at p, threshold n = sup[p]-1
        for p in range(i, j):  # need at least 2 blocks, so p < j
            n_thr = sup[p] - 1
            if n_thr < 2:
                continue
            budget = min(n_thr, j - p + 1)
            if budget < 2:
                continue
            # first block [p, c] with c < j, remaining blocks from chain()
            for c in range(p, j):
                v1, _ = interval(p, c)
                v2, _ = chain(c + 1, j, budget - 1)
                total = v1 + v2
                if total // 2 > best_v:
                    best_v = total // 2
                    blocks = [(p, c)] + chain_blocks(c + 1, j, budget - 1)
                    parts = tuple(
                        Part(sup[a], sup[b], interval(a, b)[1]) for a, b in blocks
                    )
                    best_node = Split(n_thr, parts)
        imemo[key] = (best_v, best_node)
        return best_v, best_node

    def chain(i: int, j: int, t: int) -> tuple[int, int | None]:
        """Best cover of positions [i, j] by at most t successive blocks.

        Returns (value, end of first block or None when one block is best).
        """
        t = min(t, j - i + 1)
        key = (i, j, t)
        hit = cmemo.get(key)
        if hit is not None:
            return hit
        best_v, _ = interval(i, j)
        best_c: int | None = None
        if t >= 2:
            for c in range(i, j):
                v = interval(i, c)[0] + chain(c + 1, j, t - 1)[0]
                if v > best_v:
                    best_v, best_c = v, c
        cmemo[key] = (best_v, best_c)
        return best_v, best_c

    def chain_blocks(i: int, j: int, t: int) -> list[tuple[int, int]]:
        t = min(t, j - i + 1)
        _, c = cmemo.get((i, j, t)) or chain(i, j, t)
        if c is None:
            return [(i, j)]
        return [(i, c)] + chain_blocks(c + 1, j, t - 1)

    raw, node = interval(0, s - 1)
    value = Fraction(raw, scale)
    stats = EvalStats(len(imemo) + len(cmemo), expansions)
    return NormResult(value, NormCertificate(node, value), stats)


# --------------------------------------------------------------------------
# All-subsets oracle
# --------------------------------------------------------------------------

_INFEASIBLE = -1


def tsirelson_norm_bruteforce(x: FinVec, max_support: int = 12) -> Rat:
    """||x||_T by exhaustive recursion over all admissible subset families.

    A family A_1 < ... < A_k of arbitrary finite sets is admissible for some
    threshold n iff k >= 2 and min A_1 >= k + 1 (choose n between k and
    min A_1 - 1; bigger budgets only widen the search), so the threshold is
    eliminated and the recursion enumerates ordered part families directly.
    Memoized on support bitmasks; exponential and capped.
    """
    sup, w, scale = _scaled_weights(x)
    s = len(sup)
    if s > max_support:
        raise SupportTooLarge(f"support {s} exceeds brute-force cap {max_support}")
    if s == 0:
        return Fraction(0)

    full = (1 << s) - 1
    above = [(full >> (p + 1)) << (p + 1) for p in range(s)]  # positions > p
    norm_of: dict[int, int] = {}
    fam_memo: dict[tuple[int, int, int], int] = {}

    def norm(mask: int) -> int:
        hit = norm_of.get(mask)
        if hit is not None:
            return hit
        best = max(w[p] for p in range(s) if mask >> p & 1)
        m = mask
        while m:
            p = (m & -m).bit_length() - 1
            m &= m - 1
            if sup[p] < 3:
                continue
            tail = mask & ~((1 << p) - 1)  # indices >= sup[p]
            cnt = tail.bit_count()
            if cnt < 2:
                continue
            t = min(sup[p] - 1, cnt)
            if t < 2:
                continue
            v = family(tail, t, 2)
            if v > _INFEASIBLE:
                assert v % 2 == 0
                best = max(best, v // 2)
        norm_of[mask] = best
        return best

    def family(mask: int, t: int, need: int) -> int:
        """Best sum over at most t successive parts inside mask, at least `need`."""
        t = min(t, mask.bit_count())
        if mask == 0 or t == 0:
            return 0 if need == 0 else _INFEASIBLE
        key = (mask, t, need)
        hit = fam_memo.get(key)
        if hit is not None:
            return hit
        low = mask & -mask
        rest = mask ^ low
        best = family(rest, t, need)  # element unused
        need2 = need - 1 if need else 0
        # parts containing the lowest element: P = low | sub, sub subset of rest
        sub = rest
        while True:
            part = low | sub
            top = part.bit_length() - 1
            tail = mask & above[top]
            if need2 and (tail == 0 or t == 1):
                pass  # cannot place the remaining required parts
            else:
                rec = family(tail, t - 1, need2)
                if rec > _INFEASIBLE:
                    v = norm(part) + rec
                    if v > best:
                        best = v
            if sub == 0:
                break
            sub = (sub - 1) & rest
        fam_memo[key] = best
        return best

    return Fraction(norm(full), scale)


# --------------------------------------------------------------------------
# 2-convexified norms
# --------------------------------------------------------------------------

def t2_norm_sq(x: FinVec) -> NormResult:
    """Exact squared norm in the 2-convexified space: ||(x_j^2)_j||_T.

    The certificate in the result witnesses the squared-coordinate vector
    abs_square(x), which is where the recursion actually runs.
    """
    return tsirelson_norm(abs_square(x))


def t2_norm(x: FinVec) -> float:
    """Float norm in the 2-convexified space; <= 1 ulp rounding.

    float(Fraction) rounds correctly and math.sqrt is correctly rounded, so
    the result is within 1 ulp of the true value.
    """
    return math.sqrt(float(t2_norm_sq(x).value))


# --------------------------------------------------------------------------
# Modified norms (disjoint arbitrary sets, closed left endpoint)
# --------------------------------------------------------------------------

def modified_norm(x: FinVec, max_support: int = 12) -> Rat:
    """Exact value of the modified recursion with disjoint-set families.

    max( sup-norm, 1/2 * best over n >= 1 of partitions of support(x) n [n, oo)
    into at least 2 and at most min((n+1)^n, support size) disjoint nonempty
    blocks ).  Blocks are arbitrary sets, so the engine enumerates set
    partitions with bitmask memoization; capped support.
    """
    sup, w, scale = _scaled_weights(x)
    s = len(sup)
    if s > max_support:
        raise SupportTooLarge(f"support {s} exceeds modified-norm cap {max_support}")
    if s == 0:
        return Fraction(0)

    full = (1 << s) - 1
    norm_of: dict[int, int] = {}
    part_memo: dict[tuple[int, int, int], int] = {}

    def block_budget(n: int, cnt: int) -> int:
        if n >= 5:  # (n+1)^n >= 6^5 far exceeds any feasible block count
            return cnt
        return min((n + 1) ** n, cnt)

    def norm(mask: int) -> int:
        hit = norm_of.get(mask)
        if hit is not None:
            return hit
        best = max(w[p] for p in range(s) if mask >> p & 1)
        m = mask
        while m:
            p = (m & -m).bit_length() - 1
            m &= m - 1
            tail = mask & ~((1 << p) - 1)  # indices >= sup[p]; n = sup[p] allowed
            cnt = tail.bit_count()
            if cnt < 2:
                continue
            budget = block_budget(sup[p], cnt)
            if budget < 2:
                continue
            v = partition(tail, budget, 2)
            if v > _INFEASIBLE:
                assert v % 2 == 0
                best = max(best, v // 2)
        norm_of[mask] = best
        return best

    def partition(mask: int, t: int, need: int) -> int:
        """Best cover of mask by at most t disjoint nonempty blocks, at least `need`."""
        t = min(t, mask.bit_count())
        if mask == 0:
            return 0 if need == 0 else _INFEASIBLE
        if t == 0:
            return _INFEASIBLE
        key = (mask, t, need)
        hit = part_memo.get(key)
        if hit is not None:
            return hit
        low = mask & -mask
        rest = mask ^ low
        need2 = need - 1 if need else 0
        best = _INFEASIBLE
        # the block containing the lowest element: P = low | sub
        sub = rest
        while True:
            remainder = rest ^ sub
            if remainder == 0 and need2:
                pass  # whole mask in one block but more blocks required
            elif remainder and t == 1:
                pass
            else:
                rec = partition(remainder, t - 1, need2)
                if rec > _INFEASIBLE:
                    v = norm(low | sub) + rec
                    if v > best:
                        best = v
            if sub == 0:
                break
            sub = (sub - 1) & rest
        part_memo[key] = best
        return best

    return Fraction(norm(full), scale)


def modified_t2_norm_sq(x: FinVec, max_support: int = 12) -> Rat:
    """Squared norm of the 2-convexified modified space: modified_norm of (x_j^2)."""
    return modified_norm(abs_square(x), max_support=max_support)
