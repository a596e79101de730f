import itertools
import random
from fractions import Fraction

import pytest

from banach_gauge import (
    BadSupportBound,
    FinVec,
    FlatWitness,
    NegativeEntry,
    ZeroTail,
    cotype_certificate_from_witness,
    flatness,
    search_flat,
    sup_norm,
    tsirelson_norm,
)

from conftest import random_finvec

F = Fraction


def test_flatness_examples():
    assert flatness(FinVec({3: 1, 4: 1})) == F(1, 2)
    assert flatness(FinVec({3: 1})) == 1
    assert flatness(FinVec({1: 5, 3: 1, 4: 1})) == F(5, 2)


def test_flatness_errors():
    with pytest.raises(NegativeEntry):
        flatness(FinVec({3: -1, 4: 1}))
    with pytest.raises(ZeroTail):
        flatness(FinVec({1: 1, 2: 1}))


def test_flatness_scale_invariant_and_bounded_below(rng):
    for _ in range(40):
        x = random_finvec(rng, max_index=7)
        x = FinVec({j: abs(v) for j, v in x.items()})
        if sum(v for j, v in x.items() if j >= 3) == 0:
            continue
        th = flatness(x)
        assert flatness(F(7, 3) * x) == th
        tail = sum((v for j, v in x.items() if j >= 3), F(0))
        assert th >= sup_norm(x) / tail


def test_search_n3_is_one():
    res = search_flat(3)
    assert res.converged
    assert res.witness.theta == 1
    assert res.rounds <= 200


def test_search_n4_exact_half():
    res = search_flat(4)
    assert res.converged
    assert res.witness.theta == F(1, 2)
    assert res.witness.x.support() == (3, 4)
    # normalized tail: the witness is (0, 0, 1/2, 1/2)
    assert res.witness.x == FinVec({3: F(1, 2), 4: F(1, 2)})


def test_search_n4_agrees_with_grid():
    # independent oracle: coarse exact grid over the tail simplex
    best = None
    steps = 8
    for a in range(steps + 1):
        x = FinVec({3: F(a, steps), 4: F(steps - a, steps)})
        if not x:
            continue
        tail = sum((v for j, v in x.items() if j >= 3), F(0))
        if tail == 0:
            continue
        th = tsirelson_norm(x).value / tail
        best = th if best is None else min(best, th)
    assert best == F(1, 2)
    assert search_flat(4).witness.theta == best


def test_search_monotone_and_converges():
    thetas = []
    for N in range(3, 9):
        res = search_flat(N)
        assert res.converged, f"N={N} did not converge"
        assert res.lp_value == res.witness.theta
        thetas.append(res.witness.theta)
    assert all(a >= b for a, b in zip(thetas, thetas[1:]))


def test_search_bounds():
    with pytest.raises(BadSupportBound):
        search_flat(2)
    with pytest.raises(BadSupportBound):
        search_flat(17)


def test_pool_functionals_are_dual_certificates(rng):
    res = search_flat(6)
    for _ in range(60):
        z = random_finvec(rng, max_index=8)
        nz = tsirelson_norm(z).value
        for lam in res.pool:
            pairing = sum((lam[j] * abs(z[j]) for j in z.support()), F(0))
            assert pairing <= nz


def test_lp_value_is_lower_bound_each_round():
    # with a tiny round budget the search must stop with LP value <= incumbent
    res = search_flat(6, max_rounds=1)
    assert res.lp_value <= res.witness.theta


def test_cotype_certificate_from_half_half():
    res = search_flat(4)
    cc = cotype_certificate_from_witness(res.witness)
    assert cc.ratio == 2
    assert cc.c2_lower == pytest.approx(2**0.5)
    assert cc.N == 4
    # N = 4 is the k = 1 scale, whose construction claims 2^1/1 = 2
    assert cc.claimed_c2_lower == pytest.approx(2.0)
    assert "not certified" in cc.claimed_note


def test_cotype_certificate_trivial_witness():
    w = FlatWitness(FinVec({3: 1}), 3, F(1), tsirelson_norm(FinVec({3: 1})).certificate)
    cc = cotype_certificate_from_witness(w)
    assert cc.ratio == 1
    assert cc.c2_lower == 1.0
    assert cc.claimed_c2_lower is None


def test_cotype_certificate_scale_invariant():
    x = FinVec({3: 1, 4: 1})
    w1 = FlatWitness(x, 4, flatness(x), tsirelson_norm(x).certificate)
    x2 = 2 * x
    w2 = FlatWitness(x2, 4, flatness(x2), tsirelson_norm(x2).certificate)
    c1 = cotype_certificate_from_witness(w1)
    c2 = cotype_certificate_from_witness(w2)
    assert c1.ratio == c2.ratio and c1.c2_lower == c2.c2_lower


def test_c2_lower_respects_john_cap():
    for N in range(3, 9):
        cc = cotype_certificate_from_witness(search_flat(N).witness)
        assert cc.c2_lower <= N**0.5 + 1e-12
