import random

import pytest

from hopforders.matrix import Mat, SingularMatrixError
from hopforders.orders import (NotIntegralError, ddl_normalize,
                               embedding_generators, is_ddl, order_from_theta,
                               presentation_from_matrix, same_order,
                               scale_to_integral, special_fibre,
                               verify_twisted_equation)
from hopforders.ratfunc import RatFunc

from helpers import (F2, F3, F5, pi, rand_integral_mat, rand_invertible,
                     rand_unit_matrix, worked_example)


# -- presentations --

def test_presentation_zero_1x1():
    A = Mat.zeros(F2, 1)
    pres = presentation_from_matrix(A)
    assert pres.text() == "R[u1]/(u1^2)"


def test_presentation_identity():
    pres = presentation_from_matrix(Mat.identity(F3, 2))
    assert pres.relations() == ["u1^3 - u1", "u2^3 - u2"]


def test_presentation_worked_example():
    _, _, A = worked_example(F2)
    pres = presentation_from_matrix(A)
    # column-indexed relations, with -1 = 1 and T^(p+3) = T^5 over F_2
    assert pres.relations() == [
        "u1^2 - T*u1 - (T + T^5)*u2 - (1 + T^3)*u3",
        "u2^2 - T*u1 - T*u2 - u3",
        "u3^2 - T^5*u3",
    ]


def test_presentation_requires_integral():
    with pytest.raises(ValueError):
        presentation_from_matrix(Mat.diag([pi(F2, -1)]))


# -- order_from_theta --

def test_zero_b_admits_any_theta():
    rng = random.Random(5)
    B = Mat.zeros(F3, 2)
    for _ in range(10):
        theta = rand_invertible(rng, F3, 2)
        result = order_from_theta(B, theta)
        assert result.A == Mat.zeros(F3, 2)


@pytest.mark.parametrize("spec", [F2, F3, F5])
def test_worked_example_exact(spec):
    B, theta, expected = worked_example(spec)
    result = order_from_theta(B, theta)
    assert result.A == expected
    assert embedding_generators(result.embedding) == ["T*t1 + t2 + t3", "t2", "T*t3"]
    assert verify_twisted_equation(theta, result.A, B)


def test_ddl_2x2_instance():
    # i=2, j=1, theta=T against the rank-p^2 shift algebra, p=2
    B = Mat.from_ints(F2, [[0, 1], [0, 0]])
    zero = RatFunc.zero(F2)
    theta = Mat([[pi(F2, 2), zero], [pi(F2), pi(F2)]])
    result = order_from_theta(B, theta)
    one = RatFunc.one(F2)
    assert result.A == Mat([[one, one], [-one, -one]])


def test_not_integral_witness():
    B = Mat.from_ints(F2, [[0, 1], [0, 0]])
    zero, one = RatFunc.zero(F2), RatFunc.one(F2)
    theta = Mat([[one, zero], [one, pi(F2)]])   # i=0, j=1, theta=1
    with pytest.raises(NotIntegralError) as exc:
        order_from_theta(B, theta)
    w = exc.value.witness
    assert (w.row, w.col, w.valuation) == (2, 1, -1)


def test_order_from_theta_preconditions():
    with pytest.raises(ValueError):
        order_from_theta(Mat.diag([pi(F2, -1)]), Mat.identity(F2, 1))
    with pytest.raises(SingularMatrixError):
        order_from_theta(Mat.zeros(F2, 2), Mat.zeros(F2, 2))


# -- verify_twisted_equation --

def test_verify_trivial():
    rng = random.Random(9)
    A = rand_integral_mat(rng, F3, 2)
    assert verify_twisted_equation(Mat.identity(F3, 2), A, A)


def test_verify_diagonal():
    for spec in (F2, F3, F5):
        p = spec.p
        theta = Mat.diag([pi(spec), RatFunc.one(spec)])
        B = Mat.identity(spec, 2)
        A = Mat.diag([pi(spec, p - 1), RatFunc.one(spec)])
        assert verify_twisted_equation(theta, A, B)
        assert not verify_twisted_equation(theta, B, B)


# -- same_order --

def test_same_order_reflexive():
    rng = random.Random(13)
    theta = rand_invertible(rng, F3, 2)
    assert same_order(theta, theta)


def test_same_order_shift_by_pi_j():
    theta0 = RatFunc.one(F2) + pi(F2)   # any theta with v <= j = 2
    zero = RatFunc.zero(F2)
    t1 = Mat([[pi(F2), zero], [theta0, pi(F2, 2)]])
    t2 = Mat([[pi(F2), zero], [theta0 + pi(F2, 2), pi(F2, 2)]])
    assert same_order(t1, t2)
    t3 = Mat([[pi(F2), zero], [theta0 + pi(F2), pi(F2, 2)]])
    assert not same_order(t1, t3)       # v(theta - theta') = 1 < j


def test_same_order_distinct_diagonals():
    a = Mat.diag([pi(F3), RatFunc.one(F3)])
    b = Mat.diag([RatFunc.one(F3), pi(F3)])
    assert not same_order(a, b)


def test_same_order_requires_invertible():
    with pytest.raises(SingularMatrixError):
        same_order(Mat.identity(F2, 2), Mat.zeros(F2, 2))
    with pytest.raises(SingularMatrixError):
        same_order(Mat.zeros(F2, 2), Mat.identity(F2, 2))


def test_same_order_is_equivalence():
    rng = random.Random(17)
    for _ in range(20):
        theta = rand_invertible(rng, F3, 2)
        u1 = rand_unit_matrix(rng, F3, 2)
        u2 = rand_unit_matrix(rng, F3, 2)
        t1, t2 = theta @ u1, theta @ u2
        assert same_order(theta, t1) and same_order(t1, theta)   # symmetric
        assert same_order(t1, t2)                                # transitive leg
    a = rand_invertible(rng, F3, 2)
    b = a @ Mat.diag([pi(F3), RatFunc.one(F3)])
    assert not same_order(a, b)


def test_twisted_equation_holds_for_every_success():
    # whatever A order_from_theta returns satisfies Theta*A = B*Theta^(p)
    rng = random.Random(47)
    built = 0
    while built < 20:
        spec = rng.choice([F2, F3])
        B = rand_integral_mat(rng, spec, 2)
        theta = rand_unit_matrix(rng, spec, 2)
        try:
            result = order_from_theta(B, theta)
        except NotIntegralError:
            continue
        assert verify_twisted_equation(theta, result.A, B)
        built += 1


# -- unit closure (the order is a coset of M_n(R)^x) --

def test_unit_closure():
    rng = random.Random(19)
    trials = 0
    while trials < 30:
        spec = rng.choice([F2, F3])
        n = rng.choice([2, 3])
        B = rand_integral_mat(rng, spec, n)
        theta = rand_unit_matrix(rng, spec, n)
        try:
            base = order_from_theta(B, theta)
        except NotIntegralError:
            continue
        U = rand_unit_matrix(rng, spec, n)
        moved = order_from_theta(B, theta @ U)     # must succeed
        assert same_order(theta, theta @ U)
        assert moved.A == U.inv() @ base.A @ U.twist()
        trials += 1


# -- DDL form --

def test_is_ddl_examples():
    zero = RatFunc.zero(F2)
    theta = RatFunc.one(F2) + pi(F2)
    assert is_ddl(Mat([[pi(F2), zero], [theta, pi(F2, 2)]]))
    assert not is_ddl(Mat([[pi(F2), RatFunc.one(F2)], [zero, pi(F2)]]))
    assert not is_ddl(Mat([[pi(F2), zero], [pi(F2, 3), pi(F2, 2)]]))   # dominance fails
    assert not is_ddl(Mat.diag([pi(F2), pi(F2, 2)]))                   # zero left entry
    assert not is_ddl(Mat.diag([pi(F3) + pi(F3, 2)]))                  # not a pure power
    assert is_ddl(Mat.diag([pi(F3, -4)]))                              # n=1 pure power


def test_ddl_normalize_swap():
    zero, one = RatFunc.zero(F3), RatFunc.one(F3)
    theta = Mat([[zero, pi(F3)], [one, zero]])
    out = ddl_normalize(theta)
    assert is_ddl(out)
    assert same_order(theta, out)
    assert out[0, 0] == pi(F3)          # minimal-valuation column swapped first


def test_ddl_normalize_idempotent_up_to_same_order():
    zero = RatFunc.zero(F2)
    theta = Mat([[pi(F2), zero], [RatFunc.one(F2), pi(F2, 2)]])
    assert is_ddl(theta)
    out = ddl_normalize(theta)
    assert is_ddl(out) and same_order(theta, out)


def test_ddl_normalize_dominance_case():
    zero = RatFunc.zero(F2)
    theta = Mat([[pi(F2), zero], [pi(F2, 3), pi(F2, 2)]])
    out = ddl_normalize(theta)
    assert is_ddl(out)
    assert same_order(theta, out)
    assert out[1, 0].val <= 2
    assert out[0, 0] == pi(F2) and out[1, 1] == pi(F2, 2)


def test_ddl_normalize_random():
    rng = random.Random(23)
    for spec, n in [(F2, 2), (F3, 2), (F3, 3)]:
        for _ in range(15):
            theta = rand_invertible(rng, spec, n)
            out = ddl_normalize(theta)
            assert is_ddl(out)
            assert same_order(theta, out)
            again = ddl_normalize(out)
            assert is_ddl(again) and same_order(out, again)


def test_ddl_normalize_singular():
    with pytest.raises(SingularMatrixError):
        ddl_normalize(Mat.zeros(F2, 2))


# -- scaling --

def test_scale_to_integral():
    zero, one = RatFunc.zero(F2), RatFunc.one(F2)
    m = Mat([[pi(F2, -2), zero], [one, pi(F2)]])
    out = scale_to_integral(m)
    assert out == Mat([[one, zero], [pi(F2, 2), pi(F2, 3)]])

    already = Mat([[one, zero], [pi(F2, 2), pi(F2)]])
    assert scale_to_integral(already) == already

    m2 = Mat([[pi(F3, 3), pi(F3, 5)], [pi(F3, 4), pi(F3, 3)]])
    assert scale_to_integral(m2) == Mat([[RatFunc.one(F3), pi(F3, 2)],
                                         [pi(F3), RatFunc.one(F3)]])
    with pytest.raises(ValueError):
        scale_to_integral(Mat.zeros(F2, 2))


# -- special fibre --

def test_fibre_identity_is_etale():
    report = special_fibre(Mat.identity(F3, 2))
    assert report.etale and not report.connected
    assert report.etale_rank == 2
    assert report.fpower_ranks == (2, 2)
    assert report.classification == "etale"


def test_fibre_zero_is_connected():
    report = special_fibre(Mat.zeros(F5, 3))
    assert report.connected and not report.etale
    assert report.fpower_ranks == (0, 0, 0)
    assert report.classification == "connected"


@pytest.mark.parametrize("spec", [F2, F3, F5])
def test_fibre_worked_example(spec):
    _, _, A = worked_example(spec)
    report = special_fibre(A)
    minus_one = spec.element(-1)
    assert report.abar == (
        (spec.zero, spec.zero, spec.zero),
        (spec.zero, spec.zero, spec.zero),
        (minus_one, minus_one, spec.zero),
    )
    assert report.fpower_ranks == (1, 0, 0)
    assert report.connected


def test_fibre_ranks_non_increasing_and_block_additive():
    rng = random.Random(29)
    for _ in range(20):
        A = rand_integral_mat(rng, F3, 3)
        r = special_fibre(A).fpower_ranks
        assert all(r[i] >= r[i + 1] for i in range(len(r) - 1))
    # block diagonal: etale rank adds up
    zero = RatFunc.zero(F2)
    one = RatFunc.one(F2)
    blocks = Mat([
        [one, zero, zero],
        [zero, zero, one],    # shift block: nilpotent
        [zero, zero, zero],
    ])
    rep = special_fibre(blocks)
    assert rep.etale_rank == 1
    assert rep.classification == "mixed"


def test_fibre_requires_integral():
    with pytest.raises(ValueError):
        special_fibre(Mat.diag([pi(F2, -1)]))


# -- embeddings --

def test_embedding_identity():
    res = order_from_theta(Mat.zeros(F3, 2), Mat.identity(F3, 2))
    assert embedding_generators(res.embedding) == ["t1", "t2"]


def test_embedding_columns():
    zero = RatFunc.zero(F2)
    theta = Mat([[pi(F2, 2), zero], [pi(F2), pi(F2)]])
    res = order_from_theta(Mat.zeros(F2, 2), theta)
    assert embedding_generators(res.embedding) == ["T^2*t1 + T*t2", "T*t2"]
