import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parafock.repcore import (
    VACUUM,
    BasisLabel,
    CoefficientDomainError,
    FockBasis,
    StateVector,
    apply_generator,
    apply_h,
    apply_word,
    coeff_G1,
    coeff_G2,
    enumerate_basis,
    generator_terms,
    inner_product,
    is_valid,
    parity_indicators,
    validate_label,
)


def brute_force_labels(p, cutoff):
    """Every triple in a generous box that satisfies the basis conditions, read literally."""
    found = []
    for mu12, mu22, mu11 in product(range(p + 3), range(cutoff + 3), range(p + 3)):
        theta = mu12 - mu11
        if theta not in (0, 1):
            continue
        allowed_mu12 = range(0, p + 1) if mu22 == 0 else range(1, p + 1)
        if mu12 not in allowed_mu12:
            continue
        if mu12 == 0 and theta != 0:
            continue
        if mu22 + theta <= cutoff:
            found.append((mu12, mu22, mu11))
    return found


@pytest.mark.parametrize("args, expected", [
    ((2, 1, 0, 0), (True, 1)),
    ((2, 0, 0, 0), (True, 0)),
    ((2, 0, 1, 0), (False, 0)),
    ((2, 3, 0, 3), (False, 0)),
    ((2, 1, 1, -1), (False, 2)),
    ((2, 2, 4, 0), (False, 2)),
])
def test_validate_label(args, expected):
    assert validate_label(*args) == expected


def test_enumerate_basis_small_cases():
    basis = enumerate_basis(1, 0)
    assert list(basis) == [(0, 0, 0), (1, 0, 1)]
    assert len(enumerate_basis(1, 2)) == 6
    b3 = enumerate_basis(3, 0)
    assert len(b3) == 4
    assert all(lab.mu22 == 0 and lab.theta == 0 for lab in b3)


@pytest.mark.parametrize("p, cutoff", [(p, n) for p in range(1, 6) for n in range(0, 7)])
def test_enumerate_basis_matches_brute_force(p, cutoff):
    basis = enumerate_basis(p, cutoff)
    assert sorted(basis) == sorted(brute_force_labels(p, cutoff))
    assert len(basis) == (p + 1) + 2 * p * cutoff == FockBasis.expected_size(p, cutoff)
    assert basis[0] == VACUUM
    keys = [(lab.level, lab.mu22, lab.mu12) for lab in basis]
    assert keys == sorted(keys)


def test_enumerate_basis_rejects_bad_order():
    with pytest.raises(ValueError):
        enumerate_basis(0, 3)


@pytest.mark.parametrize("j, expected", [(0, (1, 0)), (1, (0, 1)), (7, (0, 1)), (-1, (0, 1)), (10, (1, 0))])
def test_parity_indicators(j, expected):
    assert parity_indicators(j) == expected


def test_G1_examples():
    for p in range(1, 7):
        for mu22 in range(0, 5):
            assert coeff_G1(p, p, mu22) == 0.0
    # <0| c2- c2+ |0> = p fixes G1(0, 0)^2 = p
    for p in range(1, 7):
        assert coeff_G1(p, 0, 0) == pytest.approx(math.sqrt(p), abs=1e-15)
        vac = StateVector.vacuum()
        value = inner_product(vac, apply_word(["c2-", "c2+"], vac, p))
        assert value == pytest.approx(p, abs=1e-12)
    assert coeff_G1(4, 0, 0) == 2.0
    assert coeff_G1(2, 1, 1) == pytest.approx(1.0, abs=1e-15)


def test_G1_cancelled_branch_agrees_with_raw_formula_away_from_singularity():
    for p in range(1, 6):
        for mu12 in range(1, p + 1):
            raw = math.sqrt(mu12 * (mu12 + 1) * (p - mu12) / mu12)
            assert coeff_G1(p, mu12, 0) == pytest.approx(raw, abs=1e-14)


def test_G2_examples():
    for p in range(1, 6):
        assert coeff_G2(p, 0, 0) == 1.0
    assert coeff_G2(1, 1, 0) == pytest.approx(math.sqrt(2), abs=1e-15)


def test_coefficients_raise_on_negative_radicand():
    with pytest.raises(CoefficientDomainError):
        coeff_G1(2, 3, 1)
    with pytest.raises(CoefficientDomainError):
        coeff_G1(2, 3, 0)


def test_apply_h_examples():
    vac = StateVector.vacuum()
    assert apply_h(1, vac, 3) == -1.5 * vac
    assert apply_h(2, vac, 3) == 1.5 * vac
    state = StateVector.basis((1, 1, 0))
    assert apply_h(2, state, 1) == 2.5 * state


def test_apply_generator_examples():
    vac = StateVector.vacuum()
    assert apply_generator(2, "-", vac, 4) == StateVector.zero()
    assert apply_generator(1, "-", vac, 4) == StateVector.zero()
    out = apply_generator(2, "+", vac, 4)
    assert set(out.labels()) == {(1, 0, 0)}
    assert out[(1, 0, 0)] == pytest.approx(2.0, abs=1e-15)
    out = apply_generator(1, "+", vac, 4)
    assert set(out.labels()) == {(1, 0, 1)}
    assert out[(1, 0, 1)] == pytest.approx(2.0, abs=1e-15)


def test_apply_generator_rejects_unknown():
    with pytest.raises(ValueError):
        apply_generator(3, "+", StateVector.vacuum(), 2)


def test_apply_word_examples():
    vac = StateVector.vacuum()
    v = StateVector({(1, 0, 1): 0.5, (1, 1, 0): 2j})
    assert apply_word([], v, 3) == v
    assert apply_word(["c2-", "c2+"], vac, 4).max_abs() == pytest.approx(4.0, abs=1e-12)
    assert (apply_word(["c2-", "c2+"], vac, 4) - 4 * vac).max_abs() < 1e-12
    assert apply_word(["c1-", "c2+"], vac, 4) == StateVector.zero()
    with pytest.raises(ValueError):
        apply_word(["x"], vac, 1)


def test_inner_product_examples():
    vac = StateVector.vacuum()
    assert inner_product(vac, vac) == 1
    assert inner_product(StateVector.basis((1, 0, 1)), StateVector.basis((1, 0, 0))) == 0
    v = StateVector.basis((1, 0, 1), 3j)
    assert inner_product(v, v) == pytest.approx(9)
    assert v.norm_squared() == pytest.approx(9)


def test_state_vector_drops_exact_zeros():
    v = StateVector({(0, 0, 0): 1.0}) - StateVector({(0, 0, 0): 1.0})
    assert len(v) == 0 and not v
    assert StateVector({(1, 0, 1): 0.0}).terms == {}


# --- invariants ------------------------------------------------------------


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_label_closure_and_level_grading(p):
    for lab in FockBasis(p, 12):
        for symbol in ("c1+", "c1-", "c2+", "c2-"):
            for target, coeff in generator_terms(symbol, lab, p):
                assert is_valid(p, target)
                assert isinstance(coeff, float) and math.isfinite(coeff)
                delta = target.level - lab.level
                if symbol == "c2+":
                    assert delta == 1
                elif symbol == "c2-":
                    assert delta == -1
                else:
                    # c1 moves theta and mu22 in step, never the level
                    assert delta == 0


@pytest.mark.parametrize("p", [1, 2, 3, 4, 5, 6])
def test_lowest_weight_conditions(p):
    vac = StateVector.vacuum()
    for j in (1, 2):
        assert apply_generator(j, "-", vac, p).max_abs() <= 1e-12
    for j, k in product((1, 2), repeat=2):
        minus_plus = apply_word([f"c{j}-", f"c{k}+"], vac, p)
        plus_minus = apply_word([f"c{k}+", f"c{j}-"], vac, p)
        sign = -1 if (j == 2 and k == 2) else 1
        bracket = minus_plus - sign * plus_minus
        expected = p * vac if j == k else StateVector.zero()
        assert (bracket - expected).max_abs() <= 1e-12


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_cartan_consistency(p):
    for lab in FockBasis(p, 10):
        v = StateVector.basis(lab)
        c1 = apply_word(["c1-", "c1+"], v, p) - apply_word(["c1+", "c1-"], v, p)
        assert (c1 + 2 * apply_h(1, v, p)).max_abs() < 1e-10
        c2 = apply_word(["c2-", "c2+"], v, p) + apply_word(["c2+", "c2-"], v, p)
        assert (c2 - 2 * apply_h(2, v, p)).max_abs() < 1e-10


def test_cartan_consistency_fails_for_printed_coefficients():
    p = 2
    worst = 0.0
    for lab in FockBasis(p, 4):
        v = StateVector.basis(lab)
        c1 = (apply_word(["c1-", "c1+"], v, p, "printed")
              - apply_word(["c1+", "c1-"], v, p, "printed"))
        worst = max(worst, (c1 + 2 * apply_h(1, v, p)).max_abs())
    assert worst > 0.1


@pytest.mark.parametrize("p", [1, 2, 3, 4, 5, 6])
def test_coefficients_nonnegative_on_reachable_arguments(p):
    for lab in FockBasis(p, 12):
        assert coeff_G2(p, lab.mu12, lab.mu22) >= 0
        if lab.mu12 <= p:
            assert coeff_G1(p, lab.mu12, lab.mu22) >= 0
        if lab.mu12 >= 1:
            assert coeff_G1(p, lab.mu12 - 1, lab.mu22) >= 0


@pytest.mark.parametrize("p", [1, 3, 6])
def test_cartan_eigenvalues_exact(p):
    for lab in FockBasis(p, 12):
        v = StateVector.basis(lab)
        h1 = Fraction(-p, 2) + lab.mu11
        h2 = Fraction(p, 2) + lab.mu12 + lab.mu22 - lab.mu11
        assert apply_h(1, v, p)[lab] == h1
        assert apply_h(2, v, p)[lab] == h2


# --- property tests ----------------------------------------------------------

orders = st.integers(min_value=1, max_value=5)


@st.composite
def states(draw, p, max_level=8, max_terms=4):
    basis = FockBasis(p, max_level).labels
    labels = draw(st.lists(st.sampled_from(basis), min_size=0, max_size=max_terms, unique=True))
    amps = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)
    return StateVector({lab: draw(amps) for lab in labels})


@settings(max_examples=60, deadline=None)
@given(st.data(), orders, st.sampled_from(["c1+", "c1-", "c2+", "c2-", "h1", "h2"]))
def test_generators_are_linear(data, p, symbol):
    u = data.draw(states(p))
    v = data.draw(states(p))
    a = data.draw(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False))
    lhs = apply_word([symbol], a * u + v, p)
    rhs = a * apply_word([symbol], u, p) + apply_word([symbol], v, p)
    assert (lhs - rhs).max_abs() < 1e-10


@settings(max_examples=60, deadline=None)
@given(st.data(), orders, st.sampled_from([1, 2]))
def test_lazy_adjointness(data, p, j):
    # exact action, no truncation: <u | c+ v> = <c- u | v>
    u = data.draw(states(p))
    v = data.draw(states(p))
    lhs = inner_product(u, apply_generator(j, "+", v, p))
    rhs = inner_product(apply_generator(j, "-", u, p), v)
    assert abs(lhs - rhs) < 1e-10


@settings(max_examples=60, deadline=None)
@given(st.data(), orders)
def test_inner_product_hermitian_positive(data, p):
    u = data.draw(states(p))
    v = data.draw(states(p))
    assert abs(inner_product(u, v) - inner_product(v, u).conjugate()) < 1e-12
    assert inner_product(u, u).real >= 0
    assert abs(inner_product(u, u) - u.norm_squared()) < 1e-9


def test_basis_label_derived_fields():
    lab = BasisLabel(2, 1, 1)
    assert lab.theta == 1 and lab.level == 2
