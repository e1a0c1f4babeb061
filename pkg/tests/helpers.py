"""Shared builders for randomized tests (seeded random module, no global state)."""

from hopforders.fields import FieldSpec
from hopforders.matrix import Mat
from hopforders.ratfunc import Poly, RatFunc

F2 = FieldSpec(2)
F3 = FieldSpec(3)
F5 = FieldSpec(5)
F4 = FieldSpec(2, 2, (1, 1, 1))       # F_2[a]/(a^2+a+1)
F9 = FieldSpec(3, 2, (1, 0, 1))       # F_3[a]/(a^2+1)


def pi(spec, m=1):
    return RatFunc.pi_power(spec, m)


def rand_fq(rng, spec):
    return spec.element([rng.randrange(spec.p) for _ in range(spec.k)])


def rand_poly(rng, spec, max_deg=3, nonzero=False):
    n = rng.randrange(max_deg + 1) + 1
    p = Poly(spec, [rand_fq(rng, spec) for _ in range(n)])
    while nonzero and p.is_zero():
        p = Poly(spec, [rand_fq(rng, spec) for _ in range(n)])
    return p


def rand_ratfunc(rng, spec, max_deg=3):
    return RatFunc(rand_poly(rng, spec, max_deg), rand_poly(rng, spec, max_deg, nonzero=True))


def rand_nonzero_ratfunc(rng, spec, max_deg=3):
    x = rand_ratfunc(rng, spec, max_deg)
    while x.is_zero():
        x = rand_ratfunc(rng, spec, max_deg)
    return x


def rand_integral(rng, spec, max_deg=3):
    """Random element of R: polynomial numerator over a unit denominator."""
    den = rand_poly(rng, spec, max_deg, nonzero=True)
    if not den.constant():
        den = den + Poly.one(spec)
    return RatFunc(rand_poly(rng, spec, max_deg), den)


def rand_unit_scalar(rng, spec, max_deg=2):
    """Random unit of R (valuation zero)."""
    num = rand_poly(rng, spec, max_deg)
    if not num.constant():
        num = num + Poly.one(spec)
    den = rand_poly(rng, spec, max_deg, nonzero=True)
    if not den.constant():
        den = den + Poly.one(spec)
    return RatFunc(num, den)


def rand_mat(rng, spec, n, max_deg=2):
    return Mat([[rand_ratfunc(rng, spec, max_deg) for _ in range(n)] for _ in range(n)])


def rand_invertible(rng, spec, n, max_deg=2):
    m = rand_mat(rng, spec, n, max_deg)
    while m.det().is_zero():
        m = rand_mat(rng, spec, n, max_deg)
    return m


def rand_integral_mat(rng, spec, n, max_deg=2):
    return Mat([[rand_integral(rng, spec, max_deg) for _ in range(n)] for _ in range(n)])


def rand_unit_matrix(rng, spec, n, max_deg=2):
    """Random element of M_n(R)^x: unit-lower x unit-upper x unit-diagonal."""
    zero = RatFunc.zero(spec)
    one = RatFunc.one(spec)
    lower = [[one if i == j else (rand_integral(rng, spec, max_deg) if i > j else zero)
              for j in range(n)] for i in range(n)]
    upper = [[one if i == j else (rand_integral(rng, spec, max_deg) if i < j else zero)
              for j in range(n)] for i in range(n)]
    diag = Mat.diag([rand_unit_scalar(rng, spec, max_deg) for _ in range(n)])
    return Mat(lower) @ Mat(upper) @ diag


def worked_example(spec):
    """The 3x3 construction used across tests: B, Theta, and the exact A."""
    from hopforders.ratfunc import RatFunc
    one, zero = RatFunc.one(spec), RatFunc.zero(spec)
    p = spec.p

    def t(m):
        return pi(spec, m)

    B = Mat([[zero, t(2), zero], [t(3), zero, zero], [zero, zero, t(4)]])
    theta = Mat([[t(1), zero, zero], [one, one, zero], [one, zero, t(1)]])
    A = Mat([
        [t(1), t(1), zero],
        [t(p + 3) - t(1), -t(1), zero],
        [t(3) - one, -one, t(p + 3)],
    ])
    return B, theta, A
