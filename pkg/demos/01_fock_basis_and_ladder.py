# Fock space V(p): basis labels and the ladder action
#
# States of V(p) are labelled by (mu12, mu22, mu11) with theta = mu12 - mu11
# in {0, 1}. The excitation level is n = mu22 + theta.

from parafock import FockBasis, StateVector, apply_generator, apply_word, inner_product

p = 2
basis = FockBasis(p, cutoff=3)
print(basis)
for lab in basis:
    print(f"  {tuple(lab)}  theta={lab.theta}  n={lab.level}")

# Level 0 holds p+1 states, every higher level 2p.
print("size formula (p+1) + 2pN:", FockBasis.expected_size(p, 3))

# The vacuum is annihilated by both lowering operators ...
vac = StateVector.vacuum()
print("c1-|0> =", apply_generator(1, "-", vac, p))
print("c2-|0> =", apply_generator(2, "-", vac, p))

# ... and the raising operators create the one-particle states.
print("c1+|0> =", apply_generator(1, "+", vac, p))
print("c2+|0> =", apply_generator(2, "+", vac, p))

# Words act right to left. {c2-, c2+}|0> = c2- c2+|0> = p|0>.
print("<0|c2- c2+|0> =", inner_product(vac, apply_word(["c2-", "c2+"], vac, p)))

# A longer word: everything is exact, no truncation is involved.
state = apply_word(["c2+", "c1+", "c2+", "c2+"], vac, p)
print("c2+ c1+ c2+ c2+|0> =", state)
print("norm^2 =", state.norm_squared())
