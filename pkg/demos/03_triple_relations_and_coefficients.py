# Triple relations on V(p) for both ladder coefficient sets
#
# "printed" takes the second-term prefactor of c1+- as 1/(mu12+mu22+1)
# (resp. 1/(mu12+mu22)). "corrected" uses its square root. Both sets
# make c- the transpose of c+, but only the corrected one satisfies the
# triple relations and [[c1-, c1+]] = -2 h1.
#
# Run from the repository root; writes reports/triple_relations_by_coefficients.json.

import json
from pathlib import Path

from parafock.repcore import FockBasis
from parafock.superlin import (
    FockRealization,
    adjointness_residual,
    cartan_bracket_residuals,
    triple_relation_sweep,
)

CUTOFF = 10
summary = {"cutoff": CUTOFF, "coefficient_sets": {}}
for coefficients in ("printed", "corrected"):
    per_p = {}
    for p in (1, 2, 3, 4):
        probe = FockBasis(p, CUTOFF)
        rep = FockRealization(p, coefficients)
        residuals = triple_relation_sweep(rep, probe)
        failing = {str(k): v for k, v in residuals.items() if v > 1e-9}
        per_p[str(p)] = {
            "max_residual": max(residuals.values()),
            "failing_instances": len(failing),
            "failing": failing,
            "cartan": cartan_bracket_residuals(rep, probe),
            "adjointness": adjointness_residual(probe, coefficients),
        }
        print(f"{coefficients:>9} p={p}: max {per_p[str(p)]['max_residual']:.3e}, "
              f"{len(failing)}/64 failing, adjointness {per_p[str(p)]['adjointness']:.1e}")
    summary["coefficient_sets"][coefficients] = per_p

out = Path("reports") / "triple_relations_by_coefficients.json"
out.parent.mkdir(exist_ok=True)
out.write_text(json.dumps(summary, indent=2) + "\n")
print("wrote", out)
