# Angular momentum M3 in the basis, and the p = 1 fermion x boson model
#
# Run from the repository root; writes reports/m3_audit.csv.

import csv
from pathlib import Path

from parafock.oscillator import (
    angular_momentum_form_differences,
    build_observables,
    m3_eigenvalue_table,
    p1_oracle_equivalence,
)

# The bilinear and c1-linear angular momenta: M1, M2 agree, M3 flips sign.
obs = build_observables(2)
print(angular_momentum_form_differences(obs))

out = Path("reports") / "m3_audit.csv"
out.parent.mkdir(exist_ok=True)
with out.open("w", newline="") as fh:
    writer = csv.writer(fh)
    writer.writerow(["p", "mu12", "mu22", "mu11", "M3_c1_realized", "M3_bilinear",
                     "p/2-mu11", "p/2-2*mu12"])
    for p in (1, 2, 3, 4):
        table = m3_eigenvalue_table(p, 4)
        print(f"p={p}: eigenvalues {table.eigenvalues}, off-diagonal {table.offdiagonal:.1e}, "
              f"{table.printed_formula_mismatches}/{len(table.rows)} rows differ from p/2-2*mu12")
        for row in table.rows:
            writer.writerow([p, *row.label, repr(row.realized), repr(row.bilinear),
                             repr(row.closed_form), repr(row.printed_formula)])
print("wrote", out)

# p = 1: V(1) is unitarily equivalent, level by level, to a fermion pair times
# a boson pair whose creation operators anticommute with the fermion.
print(p1_oracle_equivalence(8))
