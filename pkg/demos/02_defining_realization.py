# The 5x5 defining realization of osp(3|2)
#
# Rows/columns 1-3 carry the even (so(3)) part, 4-5 the odd (sp(2)) part.

import numpy as np

from parafock.superlin import (
    block_structure_residual,
    build_defining_realization,
    cartan_bracket_residuals,
    generated_span_dimension,
    super_bracket,
    triple_relation_sweep,
)

np.set_printoptions(precision=3, suppress=True)
rep = build_defining_realization()
for name, mat in rep.matrices.items():
    print(name)
    print(mat.real)

# [[c1-, c1+]] = -2 h1 and {c2-, c2+} = 2 h2
print(cartan_bracket_residuals(rep))
print(super_bracket(rep.generator(2, -1), rep.generator(2, +1)).matrix.real)

# Even generators avoid the off-diagonal blocks, odd ones the diagonal blocks.
print("block structure violation:", block_structure_residual(rep))

# All 64 sign/index choices of the mixed triple relations.
residuals = triple_relation_sweep(rep)
print("triple relations: max residual", max(residuals.values()))

# Generators plus iterated brackets span a 12-dimensional algebra.
print("dim span =", generated_span_dimension(rep))
