"""Dense two-phase simplex over exact rationals.

Small and deliberately boring: Bland's rule everywhere (no cycling), all
arithmetic in ``Fraction``.  Problem sizes in this package are a few dozen
rows and columns, where exactness matters far more than speed.

    minimize c.x  subject to  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: tuple[Fraction, ...] | None
    objective: Fraction | None


def _optimize(rows, basis, cost, ncols):
    """Bland-rule simplex on a feasible tableau; mutates rows/basis in place."""
    m = len(rows)
    zrow = list(cost) + [Fraction(0)]
    for i in range(m):
        cb = cost[basis[i]]
        if cb:
            ri = rows[i]
            zrow = [z - cb * v for z, v in zip(zrow, ri)]
    while True:
        enter = -1
        for j in range(ncols):
            if zrow[j] < 0:
                enter = j
                break
        if enter < 0:
            return "optimal", zrow
        leave = -1
        best = None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                ratio = rows[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave < 0:
            return "unbounded", zrow
        piv = rows[leave][enter]
        rows[leave] = [v / piv for v in rows[leave]]
        prow = rows[leave]
        for i in range(m):
            if i != leave and rows[i][enter]:
                f = rows[i][enter]
                rows[i] = [v - f * p for v, p in zip(rows[i], prow)]
        if zrow[enter]:
            f = zrow[enter]
            zrow = [v - f * p for v, p in zip(zrow, prow)]
        basis[leave] = enter


def solve_lp(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None) -> LPResult:
    c = [Fraction(v) for v in c]
    A_ub = [[Fraction(v) for v in row] for row in (A_ub or [])]
    b_ub = [Fraction(v) for v in (b_ub or [])]
    A_eq = [[Fraction(v) for v in row] for row in (A_eq or [])]
    b_eq = [Fraction(v) for v in (b_eq or [])]
    n = len(c)
    m1, m2 = len(A_ub), len(A_eq)
    if any(len(r) != n for r in A_ub + A_eq):
        raise ValueError("constraint row length does not match len(c)")

    base_cols = n + m1
    raw = []
    for i in range(m1):
        row = A_ub[i] + [Fraction(0)] * m1
        row[n + i] = Fraction(1)
        raw.append((row, b_ub[i]))
    for i in range(m2):
        raw.append((A_eq[i] + [Fraction(0)] * m1, b_eq[i]))
    raw = [([-v for v in row], -rhs) if rhs < 0 else (row, rhs) for row, rhs in raw]

    # initial basis: the slack where it survived sign normalization, else artificial
    basis = [-1] * (m1 + m2)
    art_rows = []
    for i, (row, _) in enumerate(raw):
        if i < m1 and row[n + i] == 1:
            basis[i] = n + i
        else:
            art_rows.append(i)

    ncols = base_cols + len(art_rows)
    rows = [row + [Fraction(0)] * len(art_rows) + [rhs] for row, rhs in raw]
    for j, i in enumerate(art_rows):
        rows[i][base_cols + j] = Fraction(1)
        basis[i] = base_cols + j

    if art_rows:
        phase1 = [Fraction(0)] * base_cols + [Fraction(1)] * len(art_rows)
        status, zrow = _optimize(rows, basis, phase1, ncols)
        if -zrow[-1] > 0:
            return LPResult("infeasible", None, None)
        # drive leftover zero-value artificials out of the basis
        for i in range(len(rows)):
            if basis[i] >= base_cols:
                pivot_col = next(
                    (j for j in range(base_cols) if rows[i][j] != 0), None
                )
                if pivot_col is None:
                    continue  # redundant row; dropped below
                piv = rows[i][pivot_col]
                rows[i] = [v / piv for v in rows[i]]
                prow = rows[i]
                for r in range(len(rows)):
                    if r != i and rows[r][pivot_col]:
                        f = rows[r][pivot_col]
                        rows[r] = [v - f * p for v, p in zip(rows[r], prow)]
                basis[i] = pivot_col
        # drop redundant rows still pinned to an artificial, excise artificial columns
        keep = [i for i in range(len(rows)) if basis[i] < base_cols]
        rows = [rows[i][:base_cols] + rows[i][-1:] for i in keep]
        basis = [basis[i] for i in keep]
        ncols = base_cols

    cost = c + [Fraction(0)] * (ncols - n)
    status, _ = _optimize(rows, basis, cost, ncols)
    if status == "unbounded":
        return LPResult("unbounded", None, None)

    x_full = [Fraction(0)] * ncols
    for i, b in enumerate(basis):
        if b < ncols:
            x_full[b] = rows[i][-1]
    x = tuple(x_full[:n])
    objective = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    return LPResult("optimal", x, objective)
