"""DDL normal forms: every embedding matrix can be straightened.

Over a complete base, right-multiplying by units of M_n(R) brings any
invertible Theta to diagonal dominant lower triangular (DDL) form: lower
triangular, pure T-powers on the diagonal, and each diagonal valuation at
least the valuation of everything to its left in its row.  The normal form
names the same order, and the unit certificate U = Theta^{-1} Theta'' proves
it.
"""

import random

from hopforders import (FieldSpec, Mat, RatFunc, ddl_normalize, is_ddl,
                        parse_matrix, same_order, scale_to_integral)

spec = FieldSpec(3)

theta = parse_matrix("[0,T^-1,1;T,T^2,0;1,0,T^3]", spec)
print("Theta =", theta)
ddl = ddl_normalize(theta)
print("DDL   =", ddl)
assert is_ddl(ddl) and same_order(theta, ddl)

U = theta.inv() @ ddl
print("U     =", U)
print("U is a unit of M_n(R):", U.is_unit())
print()

# Even a diagonal matrix is not DDL: zero entries never dominate, so the
# normal form fills the left of each row with the diagonal's column.
diag = parse_matrix("[T,0;0,T^2]", spec)
print("diag(T, T^2) normalizes to", ddl_normalize(diag))
print()

# Normalizing twice stays in the same order class.
rng = random.Random(1)


def rand_entry():
    num = [rng.randrange(3) for _ in range(3)]
    den = [rng.randrange(3) for _ in range(3)]
    from hopforders import Poly
    d = Poly.from_ints(spec, den)
    if d.is_zero():
        d = Poly.one(spec)
    return RatFunc(Poly.from_ints(spec, num), d)


for trial in range(3):
    while True:
        m = Mat([[rand_entry() for _ in range(3)] for _ in range(3)])
        if not m.det().is_zero():
            break
    out = ddl_normalize(m)
    again = ddl_normalize(out)
    assert is_ddl(out) and same_order(m, out) and same_order(out, again)
    print(f"random Theta #{trial + 1}: normalized, certified, stable")
print()

# Rescaling by a global T-power reaches an integral matrix with a unit entry
# (the first step when an embedding arrives with denominators).
m = parse_matrix("[T^-2,0;1,T]", spec)
print(f"scale_to_integral({m}) =", scale_to_integral(m))
