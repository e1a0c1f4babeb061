"""Build a Hopf order inside a rank p^3 algebra, step by step.

The ambient K-Hopf algebra is presented by the matrix B recording the p-th
powers of its primitive generators t1, t2, t3:

    t1^p = T^3 t2,   t2^p = T^2 t1,   t3^p = T^4 t3.

Choosing an invertible Theta over K and forming A = Theta^{-1} B Theta^(p)
either lands in the valuation ring R (and then Theta embeds an R-Hopf order
with presentation read off A), or fails integrality at a witnessed entry.
"""

from hopforders import (FieldSpec, embedding_generators, order_from_theta,
                        parse_matrix, same_order, special_fibre,
                        verify_twisted_equation)

spec = FieldSpec(2)   # try p=3 or p=5: the same construction works verbatim

B = parse_matrix("[0,T^2,0;T^3,0,0;0,0,T^4]", spec)
theta = parse_matrix("[T,0,0;1,1,0;1,0,T]", spec)

result = order_from_theta(B, theta)

print("B     =", B)
print("Theta =", theta)
print("A     =", result.A)
print()

# The defining identity behind the construction, checked exactly.
assert verify_twisted_equation(theta, result.A, B)
print("Theta * A == B * Theta^(p) holds exactly.")
print()

# Column i of Theta is the embedded generator u_i inside the ambient algebra.
for name, gen in zip(result.embedding.source_gens,
                     embedding_generators(result.embedding)):
    print(f"  {name} = {gen}")
print()
print("as an abstract R-algebra:", result.presentation.text())
print()

# Reducing A mod T classifies the special fibre: the ranks of the powers of
# the semilinear operator drop 1, 0, 0, so the fibre is connected with a
# one-dimensional image in rank 3.
fibre = special_fibre(result.A)
print("A mod T ranks:", list(fibre.fpower_ranks), "->", fibre.classification)
print()

# Any unit of M_n(R) moves Theta to another matrix giving the same order.
U = parse_matrix("[1,0,0;T^3,1,0;0,1+T,1]", spec)
assert U.is_unit()
moved = order_from_theta(B, theta @ U)
assert same_order(theta, theta @ U)
assert moved.A == U.inv() @ result.A @ U.twist()
print("Theta and Theta*U give the same order; A transforms to U^-1 A U^(p).")
