"""Three-dimensional Wigner quantum oscillator realized in V(p).

The ladder operators a_k^+- are built from c1^+-, c2^+- as exact lazy
compositions; positions, momenta, the Hamiltonian and angular momentum are
linear or bilinear in them.  Identity checks apply operators to each probe
label exactly.  Norm-type measurements (Hermiticity, noncommutativity)
use the interior block of the truncated matrix.

Angular momentum is built twice:

* ``M`` from the {r, p} bilinear form; this is the set that closes
  [M_i, M_j] = i eps_ijk M_k and rotates r and p as vectors;
* ``M_c1`` from the linear c1 expressions M1 = (c1^+ + c1^-)/2,
  M2 = -i(c1^+ - c1^-)/2, M3 = [c1^-, c1^+]/2.  Its first two components
  coincide with ``M``; its third is ``-M3``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .repcore import DEFAULT_COEFFICIENTS, BasisLabel, FockBasis, StateVector
from .superlin import (
    FockRealization,
    GradedOperator,
    anticommutator,
    commutator,
    hermiticity_residual,
    interior_max_norm,
    linear_combination,
    matrix_of,
    triple_instances,
    triple_relation_operator,
)

LEVI_CIVITA = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    LEVI_CIVITA[_i, _j, _k] = 1.0
    LEVI_CIVITA[_i, _k, _j] = -1.0


@dataclass(frozen=True)
class OscillatorParams:
    mass: float = 1.0
    omega: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("mass", "omega", "hbar"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive, got {getattr(self, name)!r}")


@dataclass(frozen=True)
class ObservableSet:
    p: int
    params: OscillatorParams
    realization: FockRealization
    a_plus: tuple[GradedOperator, ...]
    a_minus: tuple[GradedOperator, ...]
    r: tuple[GradedOperator, ...]
    momentum: tuple[GradedOperator, ...]
    H: GradedOperator
    M: tuple[GradedOperator, ...]
    M_c1: tuple[GradedOperator, ...]

    def by_name(self, name: str) -> GradedOperator:
        """Look up an operator by its export name (c1+, h2, H, M3, r1, p2, ...)."""
        rep = self.realization
        table = {
            "c1+": rep.generator(1, +1), "c1-": rep.generator(1, -1),
            "c2+": rep.generator(2, +1), "c2-": rep.generator(2, -1),
            "h1": rep.h(1), "h2": rep.h(2), "H": self.H,
        }
        for k in range(3):
            table[f"M{k + 1}"] = self.M[k]
            table[f"r{k + 1}"] = self.r[k]
            table[f"p{k + 1}"] = self.momentum[k]
            table[f"a{k + 1}+"] = self.a_plus[k]
            table[f"a{k + 1}-"] = self.a_minus[k]
        try:
            return table[name]
        except KeyError:
            raise KeyError(f"unknown observable {name!r}") from None


EXPORTABLE = ("c1+", "c1-", "c2+", "c2-", "h1", "h2", "H", "M1", "M2", "M3",
              "r1", "r2", "r3", "p1", "p2", "p3")


def build_ladder(p: int, coefficients: str = DEFAULT_COEFFICIENTS,
                 realization: FockRealization | None = None):
    """Return ``(a_plus, a_minus)``, each a tuple (a_1, a_2, a_3)."""
    rep = realization or FockRealization(p, coefficients)
    c1p, c1m = rep.generator(1, +1), rep.generator(1, -1)
    s3 = math.sqrt(3.0)
    out = []
    for sign in (+1, -1):
        c2 = rep.generator(2, sign)
        s = "+" if sign > 0 else "-"
        out.append((
            (1 / (2 * s3) * commutator(c1m - c1p, c2)).renamed(f"a1{s}"),
            (1j / (2 * s3) * commutator(c1m + c1p, c2)).renamed(f"a2{s}"),
            (1 / s3 * c2).renamed(f"a3{s}"),
        ))
    return out[0], out[1]


def build_observables(p: int, params: OscillatorParams | None = None,
                      coefficients: str = DEFAULT_COEFFICIENTS) -> ObservableSet:
    params = params or OscillatorParams()
    m, w, hbar = params.mass, params.omega, params.hbar
    rep = FockRealization(p, coefficients)
    a_plus, a_minus = build_ladder(p, realization=rep)

    pos_scale = math.sqrt(hbar / (2 * m * w))
    mom_scale = math.sqrt(m * w * hbar / 2)
    r = tuple((pos_scale * (ap + am)).renamed(f"r{k + 1}")
              for k, (ap, am) in enumerate(zip(a_plus, a_minus)))
    mom = tuple((1j * mom_scale * (ap - am)).renamed(f"p{k + 1}")
                for k, (ap, am) in enumerate(zip(a_plus, a_minus)))

    H = linear_combination(
        ((w * hbar / 2, anticommutator(ap, am)) for ap, am in zip(a_plus, a_minus)),
        like=a_plus[0], grade=0,
    ).renamed("H")

    M = []
    for i in range(3):
        terms = [(-3 / (4 * hbar) * LEVI_CIVITA[i, j, k], anticommutator(r[j], mom[k]))
                 for j in range(3) for k in range(3) if LEVI_CIVITA[i, j, k]]
        M.append(linear_combination(terms, like=H).renamed(f"M{i + 1}"))

    c1p, c1m = rep.generator(1, +1), rep.generator(1, -1)
    M_c1 = (
        (0.5 * (c1p + c1m)).renamed("M1_c1"),
        (-0.5j * (c1p - c1m)).renamed("M2_c1"),
        (0.5 * commutator(c1m, c1p)).renamed("M3_c1"),
    )
    return ObservableSet(p, params, rep, a_plus, a_minus, r, mom, H, tuple(M), M_c1)


def probe_residual(op: GradedOperator, probe) -> float:
    return max((op(StateVector.basis(lab)).max_abs() for lab in probe), default=0.0)


def _probe(obs: ObservableSet, probe, max_level: int):
    return FockBasis(obs.p, max_level) if probe is None else probe


def compatibility_residual(obs: ObservableSet, k: int, sign: int, probe=None) -> float:
    """sum_i [{a_i^+, a_i^-}, a_k^sign] - sign * 2 a_k^sign over the probe set (k is 1-based)."""
    probe = _probe(obs, probe, 8)
    target = (obs.a_plus if sign > 0 else obs.a_minus)[k - 1]
    lhs = linear_combination(
        ((1, commutator(anticommutator(ap, am), target)) for ap, am in zip(obs.a_plus, obs.a_minus)),
        like=target,
    )
    return probe_residual(lhs - 2 * sign * target, probe)


def ladder_sum_residual(obs: ObservableSet, probe=None) -> float:
    """sum_k {a_k^+, a_k^-} - {c2^+, c2^-}."""
    probe = _probe(obs, probe, 8)
    rep = obs.realization
    total = linear_combination(
        ((1, anticommutator(ap, am)) for ap, am in zip(obs.a_plus, obs.a_minus)),
        like=obs.H,
    )
    c2 = anticommutator(rep.generator(2, +1), rep.generator(2, -1))
    return probe_residual(total - c2, probe)


def hamilton_heisenberg_residuals(obs: ObservableSet, probe=None) -> dict[str, float]:
    """(i/hbar)[H, r_k] - p_k/m and (i/hbar)[H, p_k] + m w^2 r_k for each k."""
    probe = _probe(obs, probe, 8)
    m, w, hbar = obs.params.mass, obs.params.omega, obs.params.hbar
    out = {}
    for k in range(3):
        rdot = (1j / hbar) * commutator(obs.H, obs.r[k])
        pdot = (1j / hbar) * commutator(obs.H, obs.momentum[k])
        out[f"r{k + 1}"] = probe_residual(rdot - (1 / m) * obs.momentum[k], probe)
        out[f"p{k + 1}"] = probe_residual(pdot + (m * w * w) * obs.r[k], probe)
    return out


def vector_transform_residual(obs: ObservableSet, which: str, probe=None,
                              angular=None) -> float:
    """max over j, k of [M_j, X_k] - i sum_l eps_jkl X_l, X one of 'M', 'r', 'p'."""
    probe = _probe(obs, probe, 8)
    Ms = obs.M if angular is None else angular
    X = {"M": Ms, "r": obs.r, "p": obs.momentum}[which]
    worst = 0.0
    for j in range(3):
        for k in range(3):
            rhs = linear_combination(((1j * LEVI_CIVITA[j, k, l], X[l]) for l in range(3)), like=X[k])
            worst = max(worst, probe_residual(commutator(Ms[j], X[k]) - rhs, probe))
    return worst


def angular_momentum_conservation_residual(obs: ObservableSet, probe=None) -> float:
    probe = _probe(obs, probe, 8)
    return max(probe_residual(commutator(obs.H, Mk), probe) for Mk in obs.M)


def angular_momentum_form_differences(obs: ObservableSet, probe=None) -> dict[str, dict[str, float]]:
    """Compare the bilinear M_k with the c1-linear M_k, both as M - M_c1 and M + M_c1."""
    probe = _probe(obs, probe, 8)
    out = {}
    for k in range(3):
        out[f"M{k + 1}"] = {
            "difference": probe_residual(obs.M[k] - obs.M_c1[k], probe),
            "sum": probe_residual(obs.M[k] + obs.M_c1[k], probe),
        }
    return out


def hermiticity_report(obs: ObservableSet, basis: FockBasis) -> dict[str, float]:
    ops = list(obs.r) + list(obs.momentum) + [obs.H] + list(obs.M)
    return {op.name: hermiticity_residual(op, basis) for op in ops}


@dataclass(frozen=True)
class Spectrum:
    levels: list[tuple[int, float, int]]   # (n, E_n, multiplicity)
    closed_form: np.ndarray                # per interior label, basis order
    diagonalized: np.ndarray               # sorted eigenvalues of the interior block
    max_deviation: float                   # closed form vs diagonalization
    formula_deviation: float               # levels vs hbar*w*(n + p/2)
    diagonal_residual: float               # largest off-diagonal |H| entry

    def as_pairs(self) -> list[tuple[float, int]]:
        return [(e, mult) for _, e, mult in self.levels]


def closed_form_energy(label: BasisLabel, p: int, params: OscillatorParams) -> float:
    return params.hbar * params.omega / 2 * (p + 2 * label.mu22 + 2 * label.theta)


def spectrum(p: int, cutoff: int, params: OscillatorParams | None = None,
             coefficients: str = DEFAULT_COEFFICIENTS, obs: ObservableSet | None = None) -> Spectrum:
    """Energy levels from the closed form and from diagonalizing the interior H block."""
    params = params or OscillatorParams()
    obs = obs or build_observables(p, params, coefficients)
    basis = FockBasis(p, cutoff)
    interior = [basis[i] for i in basis.interior_indices()]
    block = matrix_of(obs.H, basis).interior()
    eig = np.sort(np.linalg.eigvalsh(0.5 * (block + block.conj().T)))
    closed = np.array([closed_form_energy(lab, p, params) for lab in interior])
    dev = float(np.max(np.abs(np.sort(closed) - eig), initial=0.0))
    hermitian_gap = float(np.max(np.abs(block - block.conj().T), initial=0.0))
    offdiag = block - np.diag(np.diag(block))
    mult = Counter(lab.level for lab in interior)
    levels = [(n, params.hbar * params.omega * (n + p / 2), mult[n]) for n in sorted(mult)]
    by_level: dict[int, list[float]] = {}
    for lab, e in zip(interior, np.real(np.diag(block))):
        by_level.setdefault(lab.level, []).append(e)
    formula_dev = max((abs(e - E) for n, E, _ in levels for e in by_level[n]), default=0.0)
    return Spectrum(levels, closed, eig, max(dev, hermitian_gap), float(formula_dev),
                    float(np.max(np.abs(offdiag), initial=0.0)))


def noncommutativity_report(p: int, cutoff: int, params: OscillatorParams | None = None,
                            coefficients: str = DEFAULT_COEFFICIENTS,
                            obs: ObservableSet | None = None) -> dict[str, float]:
    """Interior max-norms of {r_i, r_j}, {p_i, p_j}, [r_i, r_j], [p_i, p_j], [M_i, M_j]
    and of [M_i, M_j] - i eps_ijk M_k, for i < j."""
    obs = obs or build_observables(p, params, coefficients)
    basis = FockBasis(p, cutoff)
    out = {}
    for i in range(3):
        for j in range(i + 1, 3):
            tag = f"{i + 1}{j + 1}"
            k = 3 - i - j
            out[f"{{r{tag}}}"] = interior_max_norm(anticommutator(obs.r[i], obs.r[j]), basis)
            out[f"{{p{tag}}}"] = interior_max_norm(anticommutator(obs.momentum[i], obs.momentum[j]), basis)
            out[f"[r{tag}]"] = interior_max_norm(commutator(obs.r[i], obs.r[j]), basis)
            out[f"[p{tag}]"] = interior_max_norm(commutator(obs.momentum[i], obs.momentum[j]), basis)
            mm = commutator(obs.M[i], obs.M[j])
            out[f"[M{tag}]"] = interior_max_norm(mm, basis)
            out[f"[M{tag}]-iM{k + 1}"] = interior_max_norm(
                mm - 1j * LEVI_CIVITA[i, j, k] * obs.M[k], basis)
    return out


@dataclass(frozen=True)
class M3Row:
    label: BasisLabel
    realized: float          # diagonal entry of M3 in the c1-linear form
    bilinear: float          # diagonal entry of the bilinear M3
    printed_formula: float   # p/2 - 2*mu12
    closed_form: float       # p/2 - mu11


@dataclass(frozen=True)
class M3Table:
    p: int
    rows: list[M3Row]
    offdiagonal: float
    eigenvalues: list[float]

    @property
    def expected_eigenvalues(self) -> list[float]:
        return [-self.p / 2 + i for i in range(self.p + 1)]

    @property
    def spin_content_ok(self) -> bool:
        return self.eigenvalues == self.expected_eigenvalues

    @property
    def printed_formula_mismatches(self) -> int:
        return sum(abs(row.realized - row.printed_formula) > 1e-9 for row in self.rows)


def m3_eigenvalue_table(p: int, cutoff: int, coefficients: str = DEFAULT_COEFFICIENTS,
                        obs: ObservableSet | None = None) -> M3Table:
    obs = obs or build_observables(p, coefficients=coefficients)
    basis = FockBasis(p, cutoff)
    m_c1 = matrix_of(obs.M_c1[2], basis).toarray()
    m_bil = matrix_of(obs.M[2], basis).toarray()
    offdiag = max(
        float(np.max(np.abs(m_c1 - np.diag(np.diag(m_c1))), initial=0.0)),
        float(np.max(np.abs(m_bil - np.diag(np.diag(m_bil))), initial=0.0)),
    )
    rows = []
    for i, lab in enumerate(basis):
        rows.append(M3Row(
            label=lab,
            realized=float(np.real(m_c1[i, i])),
            bilinear=float(np.real(m_bil[i, i])),
            printed_formula=p / 2 - 2 * lab.mu12,
            closed_form=p / 2 - lab.mu11,
        ))
    eigenvalues = sorted({round(row.realized * 2) / 2 for row in rows})
    return M3Table(p, rows, offdiag, eigenvalues)


# --- independent p = 1 model ------------------------------------------------


class FermionBosonModel:
    """One fermion pair times a truncated boson pair with a parity twist.

    c1^+- = f^+- (x) 1 and c2^+- = g (x) b^+-, g the fermion parity, so c1 and
    c2 anticommute.  States |f, n_b> are ordered by (n_b, f); the energy level
    of |f, n_b> is n_b.  Built from numpy only, independent of the ladder
    coefficients used for V(p).
    """

    kind = "matrix"

    def __init__(self, cutoff: int):
        self.cutoff = cutoff
        nb = cutoff + 1
        f_plus = np.array([[0, 0], [1, 0]], dtype=complex)
        parity = np.diag([1.0, -1.0]).astype(complex)
        b_plus = np.diag(np.sqrt(np.arange(1, nb)), -1).astype(complex)
        # boson index is the slow one so states group by level
        self.matrices = {
            "c1+": np.kron(np.eye(nb), f_plus),
            "c1-": np.kron(np.eye(nb), f_plus.T),
            "c2+": np.kron(b_plus, parity),
            "c2-": np.kron(b_plus.T, parity),
        }
        self.levels = np.repeat(np.arange(nb), 2)

    def generator(self, j: int, sign) -> GradedOperator:
        s = "+" if sign in (+1, "+") else "-"
        return GradedOperator(f"c{j}{s}", j - 1, matrix=self.matrices[f"c{j}{s}"])

    def h(self, k: int) -> GradedOperator:
        if k == 1:
            c = commutator(self.generator(1, -1), self.generator(1, +1))
            return (-0.5 * c).renamed("h1")
        c = anticommutator(self.generator(2, -1), self.generator(2, +1))
        return (0.5 * c).renamed("h2")

    def residual(self, op: GradedOperator, probe=None) -> float:
        """max-abs over columns at least three levels below the cutoff."""
        cols = np.flatnonzero(self.levels <= self.cutoff - 3)
        return float(np.max(np.abs(op.matrix[:, cols]), initial=0.0))

    def probe_size(self, probe=None) -> int:
        return int(np.count_nonzero(self.levels <= self.cutoff - 3))


@dataclass(frozen=True)
class OracleReport:
    cutoff: int
    triple_residual: float
    level_dims_oracle: dict[int, int]
    level_dims_fock: dict[int, int]
    nullity: int
    smallest_singular_value: float
    unitarity_residual: float
    match_residual: float
    intertwiner_found: bool


def p1_oracle_equivalence(cutoff: int, coefficients: str = DEFAULT_COEFFICIENTS,
                          tol: float = 1e-9) -> OracleReport:
    """Match V(1) against the fermion (x) boson model through a level-preserving unitary.

    Solves U A_V = A_oracle U for all four generators with U block diagonal in
    the level, then measures max |U A_V U^dagger - A_oracle| over the truncated
    matrices.
    """
    model = FermionBosonModel(cutoff)
    triple = max(
        model.residual(triple_relation_operator(model, *inst)) for inst in triple_instances()
    )
    basis = FockBasis(1, cutoff)
    rep = FockRealization(1, coefficients)
    symbols = [(1, +1), (1, -1), (2, +1), (2, -1)]
    fock = {js: matrix_of(rep.generator(*js), basis).toarray() for js in symbols}
    oracle = {js: model.generator(*js).matrix for js in symbols}

    fock_levels = np.array(basis.levels())
    dims_oracle = dict(Counter(int(n) for n in model.levels))
    dims_fock = dict(Counter(int(n) for n in fock_levels))
    dim = len(basis)
    if dim != len(model.levels) or dims_oracle != dims_fock:
        return OracleReport(cutoff, triple, dims_oracle, dims_fock, 0, math.inf, math.inf,
                            math.inf, False)

    # unknowns: entries U[a, b] with oracle level of a == Fock level of b
    allowed = [(a, b) for a in range(dim) for b in range(dim) if model.levels[a] == fock_levels[b]]
    rows = []
    eye = np.eye(dim)
    for js in symbols:
        # vec(U A) - vec(B U) in row-major flattening: (I (x) A^T) - (B (x) I)
        system = np.kron(eye, fock[js].T) - np.kron(oracle[js], eye)
        rows.append(system[:, [a * dim + b for a, b in allowed]])
    stacked = np.vstack(rows)
    _, sv, vh = np.linalg.svd(stacked)
    sv_full = np.concatenate([sv, np.zeros(max(0, len(allowed) - len(sv)))])
    nullity = int(np.count_nonzero(sv_full < tol))
    x = vh[-1].conj()
    U = np.zeros((dim, dim), dtype=complex)
    for val, (a, b) in zip(x, allowed):
        U[a, b] = val
    gram = U.conj().T @ U
    scale = np.real(np.trace(gram)) / dim
    U = U / math.sqrt(scale)
    U = U * (abs(U[0, 0]) / U[0, 0] if U[0, 0] != 0 else 1.0)
    unitarity = float(np.max(np.abs(U.conj().T @ U - eye)))
    match = max(float(np.max(np.abs(U @ fock[js] @ U.conj().T - oracle[js]))) for js in symbols)
    found = nullity == 1 and unitarity <= tol and match <= tol
    return OracleReport(cutoff, float(triple), dims_oracle, dims_fock, nullity,
                        float(sv_full[-1]), unitarity, match, found)
