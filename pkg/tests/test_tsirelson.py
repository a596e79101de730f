import random
from fractions import Fraction

import pytest

from banach_gauge import (
    FinVec,
    Leaf,
    MalformedCertificate,
    NormCertificate,
    Part,
    Split,
    SupportTooLarge,
    abs_square,
    certificate_from_json,
    certificate_to_json,
    certificate_value,
    flip_signs,
    l1_norm,
    modified_norm,
    modified_t2_norm_sq,
    norming_functional,
    restrict,
    sup_norm,
    t2_norm,
    t2_norm_sq,
    tsirelson_norm,
    tsirelson_norm_bruteforce,
    validate_certificate,
)

from conftest import random_finvec


# --------------------------------------------------------------------------
# base norm examples
# --------------------------------------------------------------------------

def test_singleton_is_one():
    res = tsirelson_norm(FinVec({5: 1}))
    assert res.value == 1


@pytest.mark.parametrize(
    "entries, expected",
    [
        ({3: 1, 4: 1}, Fraction(1)),
        ({3: 1, 4: 1, 5: 1, 6: 1}, Fraction(3, 2)),
        ({1: 1, 2: 1, 3: 1, 4: 1}, Fraction(1)),
    ],
)
def test_small_vectors_match_bruteforce(entries, expected):
    x = FinVec(entries)
    assert tsirelson_norm(x).value == expected
    assert tsirelson_norm_bruteforce(x) == expected


def test_zero_vector():
    res = tsirelson_norm(FinVec())
    assert res.value == 0
    assert certificate_value(res.certificate, FinVec()) == 0
    assert tsirelson_norm_bruteforce(FinVec()) == 0


def test_bruteforce_cap():
    big = FinVec({j: 1 for j in range(1, 14)})
    with pytest.raises(SupportTooLarge):
        tsirelson_norm_bruteforce(big)
    assert tsirelson_norm_bruteforce(big, max_support=13) == tsirelson_norm(big).value


# --------------------------------------------------------------------------
# oracle agreement and structural invariants
# --------------------------------------------------------------------------

def test_oracle_agreement_randomized(rng):
    for _ in range(60):
        x = random_finvec(rng, max_index=8)
        assert tsirelson_norm(x).value == tsirelson_norm_bruteforce(x)


def test_sandwich_and_units(rng):
    for j in (1, 2, 7, 30):
        assert tsirelson_norm(FinVec({j: 1})).value == 1
        assert t2_norm_sq(FinVec({j: 1})).value == 1
        assert modified_norm(FinVec({j: 1})) == 1
    for _ in range(120):
        x = random_finvec(rng)
        v = tsirelson_norm(x).value
        assert sup_norm(x) <= v <= l1_norm(x)


def test_unconditionality_and_restriction_monotonicity(rng):
    for _ in range(60):
        x = random_finvec(rng, max_index=8)
        signs = {j: rng.choice([-1, 1]) for j in x.support()}
        assert tsirelson_norm(flip_signs(x, signs)).value == tsirelson_norm(x).value
        A = rng.sample(range(1, 9), rng.randint(0, 7))
        assert tsirelson_norm(restrict(x, A)).value <= tsirelson_norm(x).value


def test_homogeneity_and_triangle(rng):
    for _ in range(40):
        x = random_finvec(rng, max_index=7)
        y = random_finvec(rng, max_index=7)
        c = rng.choice([Fraction(3), Fraction(-1, 2), Fraction(7, 3)])
        assert tsirelson_norm(c * x).value == abs(c) * tsirelson_norm(x).value
        assert (
            tsirelson_norm(x + y).value
            <= tsirelson_norm(x).value + tsirelson_norm(y).value
        )


# --------------------------------------------------------------------------
# certificates
# --------------------------------------------------------------------------

def test_returned_certificates_validate(rng):
    for _ in range(60):
        x = random_finvec(rng, max_index=8)
        res = tsirelson_norm(x)
        assert certificate_value(res.certificate, x) == res.value
        assert validate_certificate(res.certificate, x)


def test_certificate_value_examples():
    assert certificate_value(Leaf(3), FinVec({3: -2})) == 2
    split = Split(2, (Part(3, 3, Leaf(3)), Part(4, 4, Leaf(4))))
    assert certificate_value(split, FinVec({3: 1, 4: 1})) == 1


def test_malformed_certificates():
    # min of first interval must exceed the threshold
    bad = Split(2, (Part(2, 2, Leaf(2)), Part(4, 4, Leaf(4))))
    with pytest.raises(MalformedCertificate):
        certificate_value(bad, FinVec({2: 1, 4: 1}))
    # too many children
    bad = Split(1, (Part(2, 2, Leaf(2)), Part(4, 4, Leaf(4))))
    with pytest.raises(MalformedCertificate):
        certificate_value(bad, FinVec())
    # overlapping intervals
    bad = Split(2, (Part(3, 5, Leaf(4)), Part(5, 6, Leaf(6))))
    with pytest.raises(MalformedCertificate):
        certificate_value(bad, FinVec())
    # leaf escaping its ancestor interval
    bad = Split(2, (Part(3, 4, Leaf(5)),))
    with pytest.raises(MalformedCertificate):
        certificate_value(bad, FinVec())
    # malformed => validate_certificate is False, not an exception
    assert not validate_certificate(NormCertificate(bad, Fraction(0)), FinVec())


def test_validate_rejects_wrong_value():
    x = FinVec({3: 1, 4: 1})
    cert = NormCertificate(Leaf(3), Fraction(7))
    assert not validate_certificate(cert, x)


def test_norming_functional_examples():
    assert norming_functional(Leaf(5)) == FinVec({5: 1})
    split = Split(2, (Part(3, 3, Leaf(3)), Part(4, 4, Leaf(4))))
    assert norming_functional(split) == FinVec({3: Fraction(1, 2), 4: Fraction(1, 2)})
    two_level = Split(
        2,
        (
            Part(3, 3, Leaf(3)),
            Part(4, 6, Split(4, (Part(5, 5, Leaf(5)), Part(6, 6, Leaf(6))))),
        ),
    )
    lam = norming_functional(two_level)
    assert lam[5] == Fraction(1, 4) and lam[6] == Fraction(1, 4) and lam[3] == Fraction(1, 2)


def test_norming_functional_is_dual_certificate(rng):
    lam_pool = []
    for _ in range(20):
        x = random_finvec(rng, max_index=8)
        lam_pool.append(norming_functional(tsirelson_norm(x).certificate))
    for _ in range(40):
        z = random_finvec(rng, max_index=8)
        nz = tsirelson_norm(z).value
        for lam in lam_pool:
            pairing = sum((lam[j] * abs(z[j]) for j in z.support()), Fraction(0))
            assert pairing <= nz


def test_certificate_json_round_trip(rng):
    for _ in range(20):
        x = random_finvec(rng, max_index=7)
        cert = tsirelson_norm(x).certificate
        obj = certificate_to_json(cert)
        assert certificate_from_json(obj) == cert


# --------------------------------------------------------------------------
# 2-convexified norms
# --------------------------------------------------------------------------

def test_t2_examples():
    assert t2_norm_sq(FinVec({3: 1, 4: 1})).value == 1
    assert t2_norm(FinVec({3: 1, 4: 1})) == 1.0
    assert t2_norm_sq(FinVec({7: 1})).value == 1
    assert t2_norm_sq(FinVec({3: 1, 4: 1, 5: 1, 6: 1})).value == Fraction(3, 2)


def test_t2_certificate_witnesses_squared_vector(rng):
    for _ in range(20):
        x = random_finvec(rng, max_index=7)
        res = t2_norm_sq(x)
        assert certificate_value(res.certificate, abs_square(x)) == res.value


# --------------------------------------------------------------------------
# modified norms
# --------------------------------------------------------------------------

def test_modified_examples():
    for j in (1, 2, 9):
        assert modified_norm(FinVec({j: 1})) == 1
    assert modified_norm(FinVec({1: 1, 2: 1})) == 1
    assert modified_norm(FinVec({1: 1, 2: 1, 3: 1})) == 1


def test_modified_t2_examples():
    assert modified_t2_norm_sq(FinVec({3: 1})) == 1
    assert modified_t2_norm_sq(FinVec({1: 1, 2: -1})) == 1
    assert modified_t2_norm_sq(FinVec({1: Fraction(1, 2)})) == Fraction(1, 4)


def test_modified_closed_left_endpoint():
    # threshold 2 admits blocks {2},{3},{4} (index 2 itself allowed), which
    # the base norm's strict inequality forbids
    assert modified_norm(FinVec({1: 1, 2: 1, 3: 1, 4: 1})) == Fraction(3, 2)
    assert modified_norm(FinVec({2: 1, 3: 1, 4: 1})) == Fraction(3, 2)
    assert tsirelson_norm(FinVec({1: 1, 2: 1, 3: 1, 4: 1})).value == 1


def test_oracle_agreement_sparse_supports(rng):
    pool = [Fraction(1, 2), Fraction(-1, 2), Fraction(1), Fraction(-1), Fraction(2), Fraction(3)]
    for _ in range(60):
        size = rng.randint(1, 6)
        idxs = rng.sample(range(1, 61), size)
        x = FinVec({j: rng.choice(pool) for j in idxs})
        assert tsirelson_norm(x).value == tsirelson_norm_bruteforce(x)


def test_modified_cap():
    with pytest.raises(SupportTooLarge):
        modified_norm(FinVec({j: 1 for j in range(1, 14)}))


def test_modified_dominates_base(rng):
    # every successive admissible family is also a disjoint family with a
    # budget no smaller, so the modified value can never be below the base one
    for _ in range(40):
        x = random_finvec(rng, max_index=7)
        assert modified_norm(x) >= tsirelson_norm(x).value


def test_modified_unconditional_and_homogeneous(rng):
    for _ in range(30):
        x = random_finvec(rng, max_index=6)
        signs = {j: rng.choice([-1, 1]) for j in x.support()}
        assert modified_norm(flip_signs(x, signs)) == modified_norm(x)
        assert modified_norm(Fraction(3, 2) * x) == Fraction(3, 2) * modified_norm(x)
