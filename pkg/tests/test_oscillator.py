import numpy as np
import pytest

from parafock.oscillator import (
    FermionBosonModel,
    OscillatorParams,
    angular_momentum_conservation_residual,
    angular_momentum_form_differences,
    build_ladder,
    build_observables,
    closed_form_energy,
    compatibility_residual,
    hamilton_heisenberg_residuals,
    hermiticity_report,
    ladder_sum_residual,
    m3_eigenvalue_table,
    noncommutativity_report,
    p1_oracle_equivalence,
    spectrum,
    vector_transform_residual,
)
from parafock.repcore import BasisLabel, FockBasis, StateVector, inner_product
from parafock.superlin import FockRealization, interior_max_norm, matrix_of


@pytest.fixture(scope="module")
def obs_by_p():
    return {p: build_observables(p) for p in (1, 2, 3)}


def test_params_validation():
    with pytest.raises(ValueError):
        OscillatorParams(mass=0)
    with pytest.raises(ValueError):
        OscillatorParams(hbar=-1)


def test_grades(obs_by_p):
    obs = obs_by_p[2]
    for op in obs.a_plus + obs.a_minus + obs.r + obs.momentum:
        assert op.grade == 1
    for op in (obs.H,) + obs.M:
        assert op.grade == 0


def test_a3_minus_annihilates_vacuum():
    _, a_minus = build_ladder(2)
    assert a_minus[2](StateVector.vacuum()) == StateVector.zero()


def test_a_minus_annihilates_vacuum(obs_by_p):
    for obs in obs_by_p.values():
        for a in obs.a_minus:
            assert a(StateVector.vacuum()).max_abs() < 1e-14


def test_a1_plus_on_vacuum_p1():
    # fermion (x) boson picture: [c1- - c1+, c2+]|0> = -2|f=1, n_b=1>, so the norm^2 is 4/12
    a_plus, _ = build_ladder(1)
    out = a_plus[0](StateVector.vacuum())
    assert {lab.level for lab in out.labels()} == {1}
    assert out.norm_squared() == pytest.approx(1 / 3, abs=1e-14)


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_one_particle_norms_sum_to_p(p):
    a_plus, _ = build_ladder(p)
    vac = StateVector.vacuum()
    norms = [a(vac).norm_squared() for a in a_plus]
    assert sum(norms) == pytest.approx(p, abs=1e-12)
    assert norms[2] == pytest.approx(p / 3, abs=1e-12)


@pytest.mark.parametrize("p", [1, 2, 3])
def test_compatibility_conditions(obs_by_p, p):
    for k in (1, 2, 3):
        for sign in (1, -1):
            assert compatibility_residual(obs_by_p[p], k, sign) < 1e-10


def test_compatibility_on_vacuum(obs_by_p):
    assert compatibility_residual(obs_by_p[2], 3, -1, [BasisLabel(0, 0, 0)]) == 0.0


@pytest.mark.parametrize("p", [1, 2, 3])
def test_ladder_sum_identity(obs_by_p, p):
    assert ladder_sum_residual(obs_by_p[p]) < 1e-10


def test_hamiltonian_on_vacuum():
    params = OscillatorParams(mass=2.0, omega=0.7, hbar=1.3)
    for p in (1, 2, 3):
        obs = build_observables(p, params)
        vac = StateVector.vacuum()
        out = obs.H(vac)
        assert (out - (params.hbar * params.omega * p / 2) * vac).max_abs() < 1e-12


@pytest.mark.parametrize("p", [1, 2, 3])
def test_hermitian_observables(obs_by_p, p):
    report = hermiticity_report(obs_by_p[p], FockBasis(p, 8))
    assert len(report) == 10
    assert max(report.values()) < 1e-10


@pytest.mark.parametrize("p", [1, 2, 3])
def test_hamilton_heisenberg(obs_by_p, p):
    assert max(hamilton_heisenberg_residuals(obs_by_p[p]).values()) < 1e-10


def test_hamilton_heisenberg_general_units():
    obs = build_observables(2, OscillatorParams(mass=1.7, omega=2.3, hbar=0.4))
    assert max(hamilton_heisenberg_residuals(obs, FockBasis(2, 5)).values()) < 1e-10


@pytest.mark.parametrize("p", [1, 2, 3])
def test_angular_momentum_conserved(obs_by_p, p):
    assert angular_momentum_conservation_residual(obs_by_p[p]) < 1e-10


@pytest.mark.parametrize("p", [1, 2, 3])
@pytest.mark.parametrize("which", ["M", "r", "p"])
def test_vector_transformation(obs_by_p, p, which):
    assert vector_transform_residual(obs_by_p[p], which) < 1e-10


def test_diagonal_commutator_vanishes(obs_by_p):
    from parafock.superlin import commutator
    obs = obs_by_p[2]
    for k in range(3):
        assert interior_max_norm(commutator(obs.M[k], obs.r[k]), FockBasis(2, 6)) < 1e-10


def test_angular_momentum_forms(obs_by_p):
    for obs in obs_by_p.values():
        diffs = angular_momentum_form_differences(obs)
        assert diffs["M1"]["difference"] < 1e-10
        assert diffs["M2"]["difference"] < 1e-10
        # the c1-linear M3 is minus the bilinear one
        assert diffs["M3"]["sum"] < 1e-10
        assert diffs["M3"]["difference"] > 0.5


def test_c1_form_rotates_with_wrong_sense(obs_by_p):
    obs = obs_by_p[1]
    assert vector_transform_residual(obs, "M", angular=obs.M_c1) > 0.5


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_spectrum(p):
    levels_out = spectrum(p, 10)
    assert levels_out.max_deviation < 1e-10
    assert levels_out.formula_deviation < 1e-10
    assert levels_out.diagonal_residual < 1e-10
    assert [n for n, _, _ in levels_out.levels] == list(range(10))
    for n, energy, mult in levels_out.levels:
        assert energy == pytest.approx(n + p / 2)
        assert mult == (p + 1 if n == 0 else 2 * p)


def test_spectrum_p1_is_canonical_ladder():
    levels_out = spectrum(1, 10)
    assert [e for _, e, _ in levels_out.levels] == [n + 0.5 for n in range(10)]


def test_closed_form_energy_example():
    assert closed_form_energy(BasisLabel(2, 1, 1), 3, OscillatorParams()) == 3.5


def test_parameter_covariance():
    base = OscillatorParams()
    scaled = OscillatorParams(mass=2.0, omega=3.0, hbar=0.5)
    s0, s1 = spectrum(2, 5, base), spectrum(2, 5, scaled)
    ratio = scaled.hbar * scaled.omega / (base.hbar * base.omega)
    np.testing.assert_allclose(s1.diagonalized, ratio * s0.diagonalized, rtol=1e-12)

    basis = FockBasis(2, 5)
    o0, o1 = build_observables(2, base), build_observables(2, scaled)
    r_ratio = np.sqrt(scaled.hbar / (scaled.mass * scaled.omega))
    p_ratio = np.sqrt(scaled.mass * scaled.omega * scaled.hbar)
    for k in range(3):
        assert interior_max_norm(o1.r[k], basis) == pytest.approx(r_ratio * interior_max_norm(o0.r[k], basis))
        assert interior_max_norm(o1.momentum[k], basis) == pytest.approx(
            p_ratio * interior_max_norm(o0.momentum[k], basis))


def test_noncommutativity_p1():
    report = noncommutativity_report(1, 6)
    for pair in ("12", "13", "23"):
        assert report[f"{{r{pair}}}"] < 1e-10
        assert report[f"{{p{pair}}}"] < 1e-10
        assert report[f"[r{pair}]"] > 1e-3
        assert report[f"[p{pair}]"] > 1e-3
        assert report[f"[M{pair}]"] > 1e-3
    for name in ("[M12]-iM3", "[M13]-iM2", "[M23]-iM1"):
        assert report[name] < 1e-10


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_m3_table(p):
    table = m3_eigenvalue_table(p, 6)
    assert table.offdiagonal < 1e-12
    assert table.spin_content_ok
    vacuum_row = table.rows[0]
    assert vacuum_row.label == (0, 0, 0)
    assert vacuum_row.realized == pytest.approx(p / 2)
    for row in table.rows:
        assert row.realized == pytest.approx(row.closed_form, abs=1e-12)
    # printed p/2 - 2 mu12 only agrees where mu12 = mu11 / 2, i.e. at the vacuum
    assert table.printed_formula_mismatches > 0


def test_m3_eigenvalues_p2():
    assert m3_eigenvalue_table(2, 4).eigenvalues == [-1.0, 0.0, 1.0]


def test_fermion_boson_model_relations():
    model = FermionBosonModel(8)
    from parafock.superlin import triple_instances, triple_relation_operator
    worst = max(model.residual(triple_relation_operator(model, *inst)) for inst in triple_instances())
    assert worst < 1e-12


def test_p1_oracle_equivalence():
    report = p1_oracle_equivalence(8)
    assert report.triple_residual < 1e-12
    assert report.level_dims_oracle == report.level_dims_fock == {n: 2 for n in range(9)}
    assert report.nullity == 1
    assert report.match_residual < 1e-9
    assert report.unitarity_residual < 1e-9
    assert report.intertwiner_found


def test_p1_oracle_rejects_printed_coefficients():
    report = p1_oracle_equivalence(6, coefficients="printed")
    assert not report.intertwiner_found


def test_by_name_lookup(obs_by_p):
    obs = obs_by_p[1]
    assert obs.by_name("M3") is obs.M[2]
    with pytest.raises(KeyError):
        obs.by_name("nope")


def test_position_matrix_elements_real_symmetric_structure():
    obs = build_observables(1)
    basis = FockBasis(1, 5)
    m = matrix_of(obs.r[2], basis).interior()
    np.testing.assert_allclose(m, m.conj().T, atol=1e-12)
    v = StateVector.vacuum()
    # <0| r3^2 |0> = hbar/(2 m w) * <0| a3- a3+ |0> = 1/2 * p/3
    assert inner_product(v, obs.r[2](obs.r[2](v))).real == pytest.approx(1 / 6)
    assert FockRealization(1).p == 1
