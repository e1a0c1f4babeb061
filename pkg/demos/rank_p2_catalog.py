"""Sweep the rank p^2 catalog: closed-form predicates vs the matrix oracle.

Every rank-p^2 order sits inside one of the cataloged algebras and is named
by a canonical record (i, j, theta) for the embedding [[T^i,0],[theta,T^j]].
The closed-form predicates decide membership by integer and valuation
inequalities; the oracle decides it by actually computing
Theta^{-1} B Theta^(p).  They must agree everywhere, and the agreement
harness checks that they do.
"""

from hopforders import (Family, FieldSpec, alpha_p2_loose_predicate,
                        enumerate_orders, oracle_check_family, rank1_orders,
                        RatFunc)

spec = FieldSpec(2)

print("== orders in the second Frobenius kernel algebra (alpha_p2), small grid ==")
records = enumerate_orders(Family.ALPHA_P2, spec, range(0, 5), range(0, 3), depth=3)
for rec in records:
    tag = "  monogenic" if rec.monogenic else ""
    print(f"  i={rec.i} j={rec.j} theta={rec.theta}{tag}")
print(f"  ({len(records)} orders; monogenic exactly when v(theta) = j and pj = i)")
print()

print("== a tensor product with orders that are not tensor products ==")
records = enumerate_orders(Family.ZP_X_AP, spec, [1], [1], depth=3)
for rec in records:
    split = "split" if rec.theta.val == rec.j else "non-split"
    print(f"  i={rec.i} j={rec.j} theta={rec.theta}  [{split}]")
print()

print("== predicate vs oracle agreement reports ==")
for family in (Family.ALPHA_P_N, Family.ALPHA_P2, Family.ZP_X_AP,
               Family.ZP_SQUARED, Family.MONO_P2):
    report = oracle_check_family(family, spec, range(0, 5), range(-2, 4), depth=6)
    print(" ", report.summary())
print()

print("== a tempting but wrong simplification, caught by the harness ==")
loose = oracle_check_family(Family.ALPHA_P2, spec, range(0, 3), range(-1, 3),
                            depth=4, predicate_fn=alpha_p2_loose_predicate)
print(" ", loose.summary())
d = next(d for d in loose.disagreements
         if d.record.i == 0 and d.record.j == 1 and d.record.theta.val == 0)
print(f"  e.g. i={d.record.i} j={d.record.j} theta={d.record.theta}: "
      f"loose bound says yes, oracle says no ({d.witness})")
print()

print("== rank p: the catalog is two lines ==")
for b, i in ((RatFunc.zero(spec), -4), (RatFunc.one(spec), -1), (RatFunc.one(spec), 2)):
    res = rank1_orders(b, i)
    print(f"  b={b} i={i}: {'order' if res else 'not an order'}   {res.description}")
