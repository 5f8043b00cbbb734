"""Graded operator algebra for osp(3|2).

Operators are Z2-graded and come in two flavours that share one interface:

* matrix operators (the 5x5 defining realization), combined by numpy algebra;
* action operators on V(p), combined lazily as compositions of exact
  ladder actions, so brackets are evaluated without truncation.

``super_bracket`` works on both.  Residuals are max-abs entry norms for
matrices and max per-amplitude deviations over a probe set of basis labels
for Fock actions.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .repcore import (
    DEFAULT_COEFFICIENTS,
    BasisLabel,
    FockBasis,
    StateVector,
    apply_h,
    apply_symbol,
)

Action = Callable[[StateVector], StateVector]

GRADE = {1: 0, 2: 1}  # <l>: c1 is parafermionic (even), c2 parabosonic (odd)
SIGNS = (+1, -1)


def _sign_symbol(sign: int | str) -> str:
    if sign in (+1, "+"):
        return "+"
    if sign in (-1, "-"):
        return "-"
    raise ValueError(f"sign must be +1/-1 or '+'/'-', got {sign!r}")


@dataclass(frozen=True)
class GradedOperator:
    """A homogeneous linear operator with a Z2 grade.

    Exactly one of ``action`` (lazy map on StateVectors) or ``matrix``
    (dense array) is set.
    """

    name: str
    grade: int
    action: Action | None = field(default=None, repr=False, compare=False)
    matrix: np.ndarray | None = field(default=None, repr=False, compare=False)
    _images: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.grade not in (0, 1):
            raise ValueError(f"grade must be 0 or 1, got {self.grade}")
        if (self.action is None) == (self.matrix is None):
            raise ValueError("give exactly one of action or matrix")

    @property
    def is_matrix(self) -> bool:
        return self.matrix is not None

    def __call__(self, state: StateVector) -> StateVector:
        """Apply the Fock action; images of basis labels are memoized per operator."""
        if self.action is None:
            raise TypeError(f"{self.name} has no Fock action")
        acc: dict = {}
        for lab, amp in state.items():
            image = self._images.get(lab)
            if image is None:
                image = self.action(StateVector.basis(lab))
                self._images[lab] = image
            for target, c in image.items():
                acc[target] = acc.get(target, 0) + amp * c
        return StateVector(acc)

    def _check_compatible(self, other: GradedOperator) -> None:
        if self.is_matrix != other.is_matrix:
            raise ValueError(f"cannot combine {self.name} and {other.name}: different realizations")
        if self.is_matrix and self.matrix.shape != other.matrix.shape:
            raise ValueError(
                f"dimension mismatch: {self.name} {self.matrix.shape} vs {other.name} {other.matrix.shape}"
            )

    def __matmul__(self, other: GradedOperator) -> GradedOperator:
        self._check_compatible(other)
        name = f"{self.name}*{other.name}"
        grade = (self.grade + other.grade) % 2
        if self.is_matrix:
            return GradedOperator(name, grade, matrix=self.matrix @ other.matrix)
        return GradedOperator(name, grade, action=lambda v: self(other(v)))

    def __add__(self, other: GradedOperator) -> GradedOperator:
        self._check_compatible(other)
        if self.grade != other.grade:
            raise ValueError(f"sum of {self.name} and {other.name} is not homogeneous")
        name = f"({self.name}+{other.name})"
        if self.is_matrix:
            return GradedOperator(name, self.grade, matrix=self.matrix + other.matrix)
        return GradedOperator(name, self.grade, action=lambda v: self(v) + other(v))

    def __sub__(self, other: GradedOperator) -> GradedOperator:
        return self + (-1) * other

    def __neg__(self) -> GradedOperator:
        return (-1) * self

    def __mul__(self, scalar: complex) -> GradedOperator:
        name = f"{scalar}*{self.name}"
        if self.is_matrix:
            return GradedOperator(name, self.grade, matrix=scalar * self.matrix)
        return GradedOperator(name, self.grade, action=lambda v: scalar * self(v))

    __rmul__ = __mul__

    def renamed(self, name: str) -> GradedOperator:
        if self.is_matrix:
            return GradedOperator(name, self.grade, matrix=self.matrix)
        return GradedOperator(name, self.grade, action=self)


def super_bracket(a: GradedOperator, b: GradedOperator) -> GradedOperator:
    """[[a, b]] = ab - (-1)^(deg a deg b) ba."""
    sign = -1 if (a.grade and b.grade) else 1
    out = a @ b - sign * (b @ a)
    return out.renamed(f"[[{a.name},{b.name}]]")


def commutator(a: GradedOperator, b: GradedOperator) -> GradedOperator:
    return (a @ b - b @ a).renamed(f"[{a.name},{b.name}]")


def anticommutator(a: GradedOperator, b: GradedOperator) -> GradedOperator:
    return (a @ b + b @ a).renamed(f"{{{a.name},{b.name}}}")


def zero_like(op: GradedOperator, grade: int | None = None) -> GradedOperator:
    grade = op.grade if grade is None else grade
    if op.is_matrix:
        return GradedOperator("0", grade, matrix=np.zeros_like(op.matrix))
    return GradedOperator("0", grade, action=lambda v: StateVector())


def linear_combination(terms: Iterable[tuple[complex, GradedOperator]], like: GradedOperator,
                       grade: int | None = None) -> GradedOperator:
    out = zero_like(like, grade)
    for coeff, op in terms:
        if coeff != 0:
            out = out + coeff * op
    return out


# --- realizations -----------------------------------------------------------


def elementary(i: int, j: int, n: int = 5) -> np.ndarray:
    """e_ij with 1-based indices."""
    m = np.zeros((n, n), dtype=complex)
    m[i - 1, j - 1] = 1.0
    return m


class DefiningRealization:
    """The 5x5 matrix realization of osp(3|2).

    Rows/columns 1-3 are even, 4-5 odd.
    """

    kind = "defining"
    EVEN_DIM = 3

    def __init__(self):
        e = elementary
        r2 = np.sqrt(2.0)
        self.matrices = {
            "c1+": r2 * (e(1, 3) - e(3, 2)),
            "c1-": r2 * (e(3, 1) - e(2, 3)),
            "c2+": r2 * (e(3, 5) + e(4, 3)),
            "c2-": r2 * (e(3, 4) - e(5, 3)),
            "h1": e(1, 1) - e(2, 2),
            "h2": e(4, 4) - e(5, 5),
        }

    @staticmethod
    def e(i: int, j: int) -> np.ndarray:
        return elementary(i, j)

    def generator(self, j: int, sign) -> GradedOperator:
        s = _sign_symbol(sign)
        return GradedOperator(f"c{j}{s}", GRADE[j], matrix=self.matrices[f"c{j}{s}"])

    def h(self, k: int) -> GradedOperator:
        return GradedOperator(f"h{k}", 0, matrix=self.matrices[f"h{k}"])

    def generators(self) -> list[GradedOperator]:
        return [self.generator(j, s) for j in (1, 2) for s in SIGNS]

    def residual(self, op: GradedOperator, probe=None) -> float:
        return float(np.max(np.abs(op.matrix), initial=0.0))

    def probe_size(self, probe=None) -> int:
        return self.matrices["h1"].size


def build_defining_realization() -> DefiningRealization:
    return DefiningRealization()


class FockRealization:
    """Exact lazy realization of osp(3|2) on V(p)."""

    kind = "fock"

    def __init__(self, p: int, coefficients: str = DEFAULT_COEFFICIENTS):
        if p < 1:
            raise ValueError(f"order of parastatistics must be >= 1, got {p}")
        self.p = p
        self.coefficients = coefficients

    def generator(self, j: int, sign) -> GradedOperator:
        symbol = f"c{j}{_sign_symbol(sign)}"
        p, coeffs = self.p, self.coefficients
        return GradedOperator(symbol, GRADE[j],
                              action=lambda v: apply_symbol(symbol, v, p, coeffs))

    def h(self, k: int) -> GradedOperator:
        p = self.p
        return GradedOperator(f"h{k}", 0, action=lambda v: apply_h(k, v, p))

    def generators(self) -> list[GradedOperator]:
        return [self.generator(j, s) for j in (1, 2) for s in SIGNS]

    def default_probe(self, max_level: int = 10) -> FockBasis:
        return FockBasis(self.p, max_level)

    def residual(self, op: GradedOperator, probe: Iterable[BasisLabel] | None = None) -> float:
        """max over probe labels of the largest amplitude of op|label>."""
        probe = self.default_probe() if probe is None else probe
        return max((op(StateVector.basis(lab)).max_abs() for lab in probe), default=0.0)

    def probe_size(self, probe=None) -> int:
        probe = self.default_probe() if probe is None else probe
        return len(list(probe))


# --- triple relations -------------------------------------------------------


def _sign_power(eps: int, grade: int) -> int:
    # eps^<l>: 1 for a parafermion index, eps for a paraboson index
    return eps if grade == 1 else 1


def triple_relation_rhs_terms(j, k, l, xi, eta, eps) -> list[tuple[int, tuple[int, int]]]:
    """RHS of [[ [[c_j^xi, c_k^eta]], c_l^eps ]] as ``[(coeff, (index, sign)), ...]``."""
    terms = []
    gk, gl = GRADE[k], GRADE[l]
    if j == l and eps == -xi:
        terms.append((-2 * _sign_power(eps, gl) * (-1) ** (gk * gl), (k, eta)))
    if k == l and eps == -eta:
        terms.append((2 * _sign_power(eps, gl), (j, xi)))
    return terms


def triple_relation_operator(realization, j, k, l, xi, eta, eps) -> GradedOperator:
    """LHS - RHS of one triple relation instance, as an operator."""
    a, b, c = (realization.generator(j, xi), realization.generator(k, eta),
               realization.generator(l, eps))
    lhs = super_bracket(super_bracket(a, b), c)
    rhs = linear_combination(
        ((coeff, realization.generator(idx, s))
         for coeff, (idx, s) in triple_relation_rhs_terms(j, k, l, xi, eta, eps)),
        like=lhs,
    )
    return (lhs - rhs).renamed(f"triple{(j, k, l, xi, eta, eps)}")


def triple_relation_residual(j, k, l, xi, eta, eps, realization, probe=None) -> float:
    return realization.residual(triple_relation_operator(realization, j, k, l, xi, eta, eps), probe)


def triple_instances():
    """All 64 index/sign choices (j, k, l, xi, eta, eps)."""
    for j, k, l in itertools.product((1, 2), repeat=3):
        for xi, eta, eps in itertools.product(SIGNS, repeat=3):
            yield j, k, l, xi, eta, eps


def triple_relation_sweep(realization, probe=None) -> dict[tuple, float]:
    if realization.kind == "fock" and probe is None:
        probe = realization.default_probe()
    return {inst: triple_relation_residual(*inst, realization, probe) for inst in triple_instances()}


def cartan_bracket_residuals(realization, probe=None) -> dict[str, float]:
    """[[c1-, c1+]] + 2 h1 and [[c2-, c2+]] - 2 h2."""
    c1 = super_bracket(realization.generator(1, -1), realization.generator(1, +1))
    c2 = super_bracket(realization.generator(2, -1), realization.generator(2, +1))
    return {
        "c1_bracket_is_minus_2h1": realization.residual(c1 + 2 * realization.h(1), probe),
        "c2_bracket_is_2h2": realization.residual(c2 - 2 * realization.h(2), probe),
    }


def block_structure_residual(realization: DefiningRealization) -> float:
    """Largest entry that violates the even/odd block pattern."""
    n = realization.EVEN_DIM
    worst = 0.0
    ops = realization.generators() + [realization.h(1), realization.h(2)]
    for op in ops:
        m = op.matrix
        if op.grade == 0:
            off = np.concatenate([m[:n, n:].ravel(), m[n:, :n].ravel()])
        else:
            off = np.concatenate([m[:n, :n].ravel(), m[n:, n:].ravel()])
        worst = max(worst, float(np.max(np.abs(off), initial=0.0)))
    return worst


def super_jacobi_residual(a: GradedOperator, b: GradedOperator, c: GradedOperator) -> float:
    """[[ [[a,b]], c ]] - [[a, [[b,c]] ]] + (-1)^(|a||b|) [[b, [[a,c]] ]] as a max-abs entry."""
    sign = -1 if (a.grade and b.grade) else 1
    lhs = super_bracket(super_bracket(a, b), c)
    rhs = super_bracket(a, super_bracket(b, c)) - sign * super_bracket(b, super_bracket(a, c))
    return float(np.max(np.abs((lhs - rhs).matrix)))


def generated_span_dimension(realization: DefiningRealization, depth: int = 4, tol: float = 1e-9) -> int:
    """Dimension of the span of the generators and their iterated brackets."""
    layer = realization.generators()
    span = list(layer)
    for _ in range(depth):
        layer = [super_bracket(x, g) for x in layer for g in realization.generators()]
        span.extend(layer)
    stacked = np.array([op.matrix.ravel() for op in span])
    return int(np.linalg.matrix_rank(stacked, tol=tol))


# --- sparse matrices over a truncated basis --------------------------------


@dataclass(frozen=True)
class SparseComplexMatrix:
    """Sparse matrix of an operator over a FockBasis.

    ``boundary_rows`` lists indices of labels at the cutoff level whose image
    was cut off by the truncation (non-empty only for operators that raise
    past the cutoff).
    """

    data: sp.csr_array
    basis: FockBasis
    boundary_rows: frozenset[int] = frozenset()

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def entries(self) -> list[tuple[int, int, complex]]:
        coo = self.data.tocoo()
        triples = [(int(r), int(c), complex(v)) for r, c, v in zip(coo.row, coo.col, coo.data) if v != 0]
        return sorted(triples)

    def toarray(self) -> np.ndarray:
        return self.data.toarray()

    def interior(self) -> np.ndarray:
        """Dense block over labels strictly below the cutoff level."""
        idx = self.basis.interior_indices()
        return self.toarray()[np.ix_(idx, idx)]


def matrix_of(op: GradedOperator, basis: FockBasis) -> SparseComplexMatrix:
    """Column c holds op applied to basis label c, restricted to the basis.

    Entries come from the exact lazy action, so every stored matrix element is
    exact; only images leaving the basis are lost.
    """
    rows, cols, vals = [], [], []
    boundary = set()
    for c, lab in enumerate(basis):
        for target, amp in op(StateVector.basis(lab)).items():
            if target in basis:
                rows.append(basis.index(target))
                cols.append(c)
                vals.append(amp)
            else:
                boundary.add(c)
    n = len(basis)
    data = sp.csr_array((np.array(vals, dtype=complex), (rows, cols)), shape=(n, n))
    data.sum_duplicates()
    data.eliminate_zeros()
    return SparseComplexMatrix(data, basis, frozenset(boundary))


def interior_max_norm(op: GradedOperator, basis: FockBasis) -> float:
    block = matrix_of(op, basis).interior()
    return float(np.max(np.abs(block), initial=0.0))


def pair_adjointness_residual(a: GradedOperator, b: GradedOperator, basis: FockBasis) -> float:
    """max |M(b) - M(a)^dagger| over the interior block."""
    ma = matrix_of(a, basis).interior()
    mb = matrix_of(b, basis).interior()
    return float(np.max(np.abs(mb - ma.conj().T), initial=0.0))


def hermiticity_residual(op: GradedOperator, basis: FockBasis) -> float:
    return pair_adjointness_residual(op, op, basis)


def adjointness_residual(basis: FockBasis, coefficients: str = DEFAULT_COEFFICIENTS) -> float:
    """max over j of the interior-block deviation of M(c_j^-) from M(c_j^+)^dagger."""
    rep = FockRealization(basis.p, coefficients)
    return max(
        pair_adjointness_residual(rep.generator(j, +1), rep.generator(j, -1), basis) for j in (1, 2)
    )


def vacuum_condition_residuals(p: int, coefficients: str = DEFAULT_COEFFICIENTS) -> dict[str, float]:
    """c_j^-|0> = 0 and [[c_j^-, c_k^+]]|0> = p delta_jk |0>."""
    rep = FockRealization(p, coefficients)
    vac = StateVector.vacuum()
    out = {}
    for j in (1, 2):
        out[f"c{j}-|0>"] = rep.generator(j, -1)(vac).max_abs()
    for j in (1, 2):
        for k in (1, 2):
            image = super_bracket(rep.generator(j, -1), rep.generator(k, +1))(vac)
            if j == k:
                image = image - p * vac
            out[f"[[c{j}-,c{k}+]]|0>"] = image.max_abs()
    return out
