import math
from fractions import Fraction

import numpy as np
import pytest

from banach_gauge import (
    DegenerateInput,
    FinVec,
    InvalidBound,
    SpaceOracle,
    SqrtRat,
    TooManyVectors,
    VectorFamily,
    ZeroFamily,
    c2_lower_from_witness,
    caratheodory_reduce,
    diagonal_sqrt_family,
    flm_reduce,
    gaussian_ratio,
    kwapien_upper,
    rademacher_ratio,
)

F = Fraction


def _basis_family(space, k):
    vecs = []
    for i in range(k):
        row = [F(0)] * space.dim
        row[i] = F(1)
        vecs.append(row)
    return VectorFamily.make(vecs, space)


# --------------------------------------------------------------------------
# oracles
# --------------------------------------------------------------------------

def test_oracle_tags_and_checks():
    for tag, dim in [("l1", 3), ("l2", 4), ("linf", 2), ("lp3", 3), ("T", 4), ("T2", 4)]:
        oracle = SpaceOracle.from_tag(tag, dim)
        assert oracle.spot_check(seed=7)


def test_polytope_oracle_is_linf_like():
    # functionals +-e_i* give the sup norm
    oracle = SpaceOracle.polytope(2, [[1, 0], [0, 1]])
    assert oracle.norm_sq([F(3), F(-4)]) == 16
    assert oracle.spot_check(seed=3)


def test_t2_span_oracle_exact():
    oracle = SpaceOracle.t2_span(4)
    assert oracle.norm_sq([F(0), F(0), F(1), F(1)]) == 1
    assert oracle.norm([0.0, 0.0, 1.0, 1.0]) == 1.0


def test_sqrt_rat_arithmetic():
    r = SqrtRat.of(F(1, 2))
    assert r.square() == F(1, 2)
    assert float(r) == pytest.approx(math.sqrt(0.5))
    assert (-r).square() == F(1, 2)
    assert (r + (-r)) == 0
    two = r + r
    assert isinstance(two, SqrtRat) and two.square() == 2
    assert r + F(0) is r
    mixed = r + SqrtRat.of(F(1, 3))
    assert isinstance(mixed, float)


# --------------------------------------------------------------------------
# Rademacher (exact) ratios
# --------------------------------------------------------------------------

def test_l1_type_ratio_exactly_two():
    est = rademacher_ratio(_basis_family(SpaceOracle.lp(2, 1.0), 2), "type")
    assert est.exact == 2
    assert est.mode == "rademacher-exact"
    assert est.ci_low == est.ci_high == est.point == 2.0


def test_hilbert_orthonormal_ratios_are_one():
    fam = _basis_family(SpaceOracle.euclidean(4), 4)
    assert rademacher_ratio(fam, "type").exact == 1
    assert rademacher_ratio(fam, "cotype").exact == 1


def test_t2_span_cotype_ratio_two():
    space = SpaceOracle.t2_span(4)
    fam = VectorFamily.make(
        [[F(0), F(0), F(1), F(0)], [F(0), F(0), F(0), F(1)]], space
    )
    est = rademacher_ratio(fam, "cotype")
    assert est.exact == 2


def test_diagonal_sqrt_family_keeps_exactness():
    # squared weights 1/2, 1/2 at indices 3, 4: the ratio must match the
    # flat-witness pipeline value 2 exactly even though sqrt(1/2) is irrational
    space = SpaceOracle.t2_span(4)
    fam = diagonal_sqrt_family(space, FinVec({3: F(1, 2), 4: F(1, 2)}))
    est = rademacher_ratio(fam, "cotype")
    assert est.exact == 2


def test_rademacher_invariances():
    space = SpaceOracle.lp(3, 1.0)
    vecs = [[F(1), F(0), F(2)], [F(0), F(-1), F(1)], [F(1), F(1), F(0)]]
    base = rademacher_ratio(VectorFamily.make(vecs, space), "type").exact
    perm = rademacher_ratio(VectorFamily.make(vecs[::-1], space), "type").exact
    flip = rademacher_ratio(
        VectorFamily.make([[-v for v in vecs[1]]] + [vecs[0], vecs[2]], space), "type"
    ).exact
    assert base == perm == flip


def test_rademacher_caps_and_errors():
    space = SpaceOracle.euclidean(2)
    big = VectorFamily.make([[F(1), F(0)]] * 21, space)
    with pytest.raises(TooManyVectors):
        rademacher_ratio(big, "type")
    zero = VectorFamily.make([[F(0), F(0)]], space)
    with pytest.raises(ZeroFamily):
        rademacher_ratio(zero, "type")
    with pytest.raises(ZeroFamily):
        rademacher_ratio(zero, "cotype")


# --------------------------------------------------------------------------
# Gaussian (Monte-Carlo) ratios
# --------------------------------------------------------------------------

def test_gaussian_hilbert_close_to_one():
    fam = _basis_family(SpaceOracle.euclidean(2), 2)
    est = gaussian_ratio(fam, "type", samples=100_000, seed=11)
    assert est.ci_low <= 1.0 <= est.ci_high
    assert est.point == pytest.approx(1.0, abs=0.02)


def test_gaussian_l1_type_closed_form():
    # E(|g1| + |g2|)^2 = 2 + 4/pi over sum of norms 2
    fam = _basis_family(SpaceOracle.lp(2, 1.0), 2)
    est = gaussian_ratio(fam, "type", samples=200_000, seed=3)
    target = (2 + 4 / math.pi) / 2
    assert est.ci_low <= target <= est.ci_high
    assert est.point == pytest.approx(target, rel=0.02)


def test_gaussian_deterministic():
    fam = _basis_family(SpaceOracle.lp(2, 1.0), 2)
    a = gaussian_ratio(fam, "cotype", samples=5_000, seed=42)
    b = gaussian_ratio(fam, "cotype", samples=5_000, seed=42)
    assert a == b
    c = gaussian_ratio(fam, "cotype", samples=5_000, seed=43)
    assert c.point != a.point


def test_gaussian_sample_floor():
    fam = _basis_family(SpaceOracle.euclidean(2), 2)
    with pytest.raises(Exception):
        gaussian_ratio(fam, "type", samples=10, seed=0)


# --------------------------------------------------------------------------
# cone reduction
# --------------------------------------------------------------------------

def test_caratheodory_one_dimensional_forced():
    red = caratheodory_reduce([[1.0], [1.0], [1.0]], 1)
    assert np.allclose(red.weights, [3.0, 0.0, 0.0])
    assert np.allclose(red.v[:, 0], [1.0, 0.0, 0.0])
    assert np.allclose(red.w[:, 0], [0.0, 1.0, 1.0])


def test_caratheodory_invariants_random():
    rng = np.random.default_rng(2024)
    for _ in range(50):
        d = int(rng.integers(1, 6))
        m = int(rng.integers(d * (d + 1) // 2 + 1, 31))
        U = rng.standard_normal((m, d))
        red = caratheodory_reduce(U, d)
        bound = d * (d + 1) // 2
        assert int(np.count_nonzero(red.weights)) <= bound
        assert red.weights[0] >= 1 - 1e-12
        assert all(a >= b for a, b in zip(red.weights, red.weights[1:]))
        target = U.T @ U
        reduced = red.vectors.T @ (red.weights[:, None] * red.vectors)
        assert np.linalg.norm(reduced - target) <= 1e-9 * max(1.0, np.linalg.norm(target))
        total = float(np.sum(red.v**2) + np.sum(red.w**2))
        assert total == pytest.approx(float(np.sum(U**2)), rel=1e-12)


def test_caratheodory_branch_covariances():
    rng = np.random.default_rng(7)
    U = rng.standard_normal((10, 2))
    red = caratheodory_reduce(U, 2)
    A = U.T @ U
    c1 = red.weights[0]
    cov_v = red.v.T @ red.v
    cov_w = red.w.T @ red.w
    assert np.linalg.norm(cov_v - A / c1) <= 1e-9 * np.linalg.norm(A)
    assert np.linalg.norm(cov_w - (1 - 1 / c1) * A) <= 1e-9 * np.linalg.norm(A)


def test_caratheodory_degenerate():
    with pytest.raises(DegenerateInput):
        caratheodory_reduce([[0.0, 0.0], [0.0, 0.0]], 2)


# --------------------------------------------------------------------------
# family reduction
# --------------------------------------------------------------------------

def test_flm_noop_when_small():
    fam = _basis_family(SpaceOracle.euclidean(3), 2)  # bound = 6 > 2
    out = flm_reduce(fam, "type", mc_samples=500, seed=1)
    assert out.vectors == fam.vectors


def test_flm_one_dimensional_hilbert():
    space = SpaceOracle.euclidean(1)
    fam = VectorFamily.make([[1.0], [1.0], [1.0]], space)
    out = flm_reduce(fam, "type", mc_samples=2_000, seed=5)
    assert len(out) == 1
    est = rademacher_ratio(
        VectorFamily.make([[F(1)]], space), "type"
    )
    assert est.exact == 1


def test_flm_cotype_kind():
    space = SpaceOracle.lp(2, 1.0)
    rng = np.random.default_rng(17)
    fam = VectorFamily.make(rng.standard_normal((8, 2)).tolist(), space)
    out = flm_reduce(fam, "cotype", mc_samples=5_000, seed=2)
    assert 1 <= len(out) <= 3


def test_flm_ratio_preserved_l1():
    space = SpaceOracle.lp(2, 1.0)
    rng = np.random.default_rng(99)
    fam = VectorFamily.make(rng.standard_normal((10, 2)).tolist(), space)
    samples, seed = 50_000, 123
    before = gaussian_ratio(fam, "type", samples=samples, seed=seed)
    out = flm_reduce(fam, "type", mc_samples=20_000, seed=7)
    assert len(out) <= 3
    after = gaussian_ratio(out, "type", samples=samples, seed=seed)
    spread = (before.ci_high - before.ci_low) + (after.ci_high - after.ci_low)
    assert after.point >= before.point - 1.5 * spread


# --------------------------------------------------------------------------
# composition bounds
# --------------------------------------------------------------------------

def test_kwapien_upper():
    assert kwapien_upper(1, 1) == 1
    assert kwapien_upper(2**0.5, 2**0.5) == pytest.approx(2)
    assert kwapien_upper(1.5, 2.0) == 3.0
    with pytest.raises(InvalidBound):
        kwapien_upper(0.5, 2.0)


def test_c2_lower_from_witness():
    space = SpaceOracle.t2_span(4)
    fam = VectorFamily.make(
        [[F(0), F(0), F(1), F(0)], [F(0), F(0), F(0), F(1)]], space
    )
    est = rademacher_ratio(fam, "cotype")
    low = c2_lower_from_witness(est)
    assert low.value == pytest.approx(math.sqrt(2))
    assert low.certified and low.mode == "rademacher-exact"
    assert low.exact_sq == 2

    hil = rademacher_ratio(_basis_family(SpaceOracle.euclidean(3), 3), "type")
    assert c2_lower_from_witness(hil).value == 1.0

    l1 = rademacher_ratio(_basis_family(SpaceOracle.lp(2, 1.0), 2), "type")
    assert c2_lower_from_witness(l1).value == pytest.approx(math.sqrt(2))
