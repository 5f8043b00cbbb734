"""Fock space V(p) of one parafermion pair and one paraboson pair.

States are labelled by integer triples ``(mu12, mu22, mu11)`` with
``theta = mu12 - mu11`` in {0, 1}.  The ladder operators c1^+-, c2^+- and the
Cartan elements h1, h2 act on these labels through closed-form real
coefficients.  Everything here is evaluated lazily on sparse state vectors,
so no truncation ever enters an identity check.

Two coefficient sets are available for the ladder action:

``"corrected"`` (default)
    The second (``theta``-gated) term of c1^+ and c1^- carries the square
    root of ``1/(mu12 + mu22 + 1)`` resp. ``1/(mu12 + mu22)``.  With this
    choice all parastatistics triple relations hold.
``"printed"``
    The same prefactors without the square root.  This set is still
    adjoint-consistent (c^- is the transpose of c^+) but breaks the triple
    relations and the Cartan bracket ``[c1^-, c1^+] = -2 h1``.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator, Mapping, Sequence
from functools import lru_cache
from typing import NamedTuple

COEFFICIENT_SETS = ("corrected", "printed")
DEFAULT_COEFFICIENTS = "corrected"

GENERATOR_SYMBOLS = ("c1+", "c1-", "c2+", "c2-")
WORD_SYMBOLS = GENERATOR_SYMBOLS + ("h1", "h2")


class CoefficientDomainError(ValueError):
    """A ladder coefficient was requested outside its admissible range."""


class BasisLabel(NamedTuple):
    mu12: int
    mu22: int
    mu11: int

    @property
    def theta(self) -> int:
        return self.mu12 - self.mu11

    @property
    def level(self) -> int:
        """Excitation number n = mu22 + theta."""
        return self.mu22 + self.mu12 - self.mu11


VACUUM = BasisLabel(0, 0, 0)


def validate_label(p: int, mu12: int, mu22: int, mu11: int) -> tuple[bool, int]:
    """Return ``(valid, theta)`` for a candidate label of V(p).

    Never raises; ``theta`` is ``mu12 - mu11`` whether or not the label is valid.
    """
    theta = mu12 - mu11
    if mu12 < 0 or mu22 < 0 or mu11 < 0:
        return False, theta
    if theta not in (0, 1):
        return False, theta
    if mu12 > p:
        return False, theta
    if mu22 >= 1 and mu12 < 1:
        return False, theta
    if mu12 == 0 and theta != 0:
        return False, theta
    return True, theta


def is_valid(p: int, label: Sequence[int]) -> bool:
    return validate_label(p, *label)[0]


def label_sort_key(label: BasisLabel) -> tuple[int, int, int]:
    return (label.level, label.mu22, label.mu12)


class FockBasis:
    """Truncated, canonically ordered basis of V(p) with levels ``n <= cutoff``.

    Ordering is ascending ``(n, mu22, mu12)``; the vacuum comes first.
    """

    def __init__(self, p: int, cutoff: int):
        if p < 1:
            raise ValueError(f"order of parastatistics must be >= 1, got {p}")
        if cutoff < 0:
            raise ValueError(f"cutoff must be >= 0, got {cutoff}")
        self.p = int(p)
        self.cutoff = int(cutoff)
        labels = []
        for mu22 in range(cutoff + 1):
            for mu12 in range(p + 1):
                for theta in (0, 1):
                    lab = BasisLabel(mu12, mu22, mu12 - theta)
                    if lab.level <= cutoff and is_valid(p, lab):
                        labels.append(lab)
        labels.sort(key=label_sort_key)
        self.labels: tuple[BasisLabel, ...] = tuple(labels)
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[BasisLabel]:
        return iter(self.labels)

    def __getitem__(self, i: int) -> BasisLabel:
        return self.labels[i]

    def __contains__(self, label) -> bool:
        return label in self._index

    def __repr__(self) -> str:
        return f"FockBasis(p={self.p}, cutoff={self.cutoff}, size={len(self)})"

    def index(self, label: BasisLabel) -> int:
        return self._index[label]

    def levels(self) -> list[int]:
        return [lab.level for lab in self.labels]

    def interior_indices(self) -> list[int]:
        """Indices of labels strictly below the cutoff level."""
        return [i for i, lab in enumerate(self.labels) if lab.level < self.cutoff]

    @staticmethod
    def expected_size(p: int, cutoff: int) -> int:
        return (p + 1) + 2 * p * cutoff


def enumerate_basis(p: int, cutoff: int) -> FockBasis:
    return FockBasis(p, cutoff)


def parity_indicators(j: int) -> tuple[int, int]:
    """(E_j, O_j): E_j = 1 for even j, O_j = 1 for odd j."""
    even = 1 if j % 2 == 0 else 0
    return even, 1 - even


def _even(j: int) -> int:
    return parity_indicators(j)[0]


def _odd(j: int) -> int:
    return parity_indicators(j)[1]


def _checked_sqrt(radicand: float, what: str) -> float:
    if radicand < 0:
        raise CoefficientDomainError(f"negative radicand {radicand!r} in {what}")
    return math.sqrt(radicand)


def coeff_G1(p: int, mu12: int, mu22: int) -> float:
    """Radical coefficient G1 of the ladder action.

    For ``mu22 == 0`` the common factor ``mu12`` is cancelled, which removes
    the 0/0 at ``mu12 = mu22 = 0`` and gives ``G1(0, 0) = sqrt(p)``.
    """
    if mu22 == 0:
        return _checked_sqrt((mu12 + 1) * (p - mu12), f"G1({mu12}, {mu22}; p={p})")
    denom = mu12 + mu22 + 1 - _odd(mu22 + 1)
    if denom == 0:
        raise CoefficientDomainError(f"zero denominator in G1({mu12}, {mu22}; p={p})")
    num = mu12 * (mu12 + mu22 + 1) * (p - mu12)
    return _checked_sqrt(num / denom, f"G1({mu12}, {mu22}; p={p})")


def coeff_G2(p: int, mu12: int, mu22: int) -> float:
    e1, o1 = parity_indicators(mu22 + 1)
    num = (_odd(mu22) * mu22 + 1) * (e1 * (p + mu22) + 1) * (o1 * (mu12 + mu22) + 1)
    denom = e1 * (mu12 + mu22 - 1) + 1
    if denom == 0:
        raise CoefficientDomainError(f"zero denominator in G2({mu12}, {mu22}; p={p})")
    return _checked_sqrt(num / denom, f"G2({mu12}, {mu22}; p={p})")


def _c1_second_prefactor(denom: int, coefficients: str) -> float:
    if coefficients == "printed":
        return 1.0 / denom
    return 1.0 / math.sqrt(denom)


@lru_cache(maxsize=None)
def generator_terms(
    symbol: str, label: BasisLabel, p: int, coefficients: str = DEFAULT_COEFFICIENTS
) -> tuple[tuple[BasisLabel, float], ...]:
    """Image of a single basis label under c1+-, c2+- as ``((target, coeff), ...)``.

    Terms whose target is not a valid label are dropped before any prefactor
    is evaluated, so 0/0 prefactors at the edge of the basis never arise.
    """
    if coefficients not in COEFFICIENT_SETS:
        raise ValueError(f"unknown coefficient set {coefficients!r}")
    m12, m22, m11 = label
    t = m12 - m11
    out: list[tuple[BasisLabel, float]] = []

    def emit(target: BasisLabel, gate: int, coeff) -> None:
        if gate and is_valid(p, target):
            value = coeff()
            if value != 0.0:
                out.append((target, value))

    if symbol == "c1+":
        emit(BasisLabel(m12 + 1, m22, m11 + 1), 1,
             lambda: ((m12 + m22) / (m12 + m22 + 1)) ** (t / 2) * coeff_G1(p, m12, m22))
        emit(BasisLabel(m12, m22 + 1, m11 + 1), t,
             lambda: -_c1_second_prefactor(m12 + m22 + 1, coefficients) * coeff_G2(p, m12, m22))
    elif symbol == "c1-":
        emit(BasisLabel(m12 - 1, m22, m11 - 1), 1,
             lambda: ((m12 + m22 - 1) / (m12 + m22)) ** (t / 2) * coeff_G1(p, m12 - 1, m22))
        emit(BasisLabel(m12, m22 - 1, m11 - 1), 1 - t,
             lambda: -_c1_second_prefactor(m12 + m22, coefficients) * coeff_G2(p, m12, m22 - 1))
    elif symbol == "c2+":
        emit(BasisLabel(m12 + 1, m22, m11), 1 - t,
             lambda: math.sqrt(1 / (m12 + m22 + 1)) * coeff_G1(p, m12, m22))
        emit(BasisLabel(m12, m22 + 1, m11), 1,
             lambda: (-1) ** t * math.sqrt((m12 + m22) / (m11 + m22 + 1)) * coeff_G2(p, m12, m22))
    elif symbol == "c2-":
        emit(BasisLabel(m12 - 1, m22, m11), t,
             lambda: math.sqrt(1 / (m12 + m22)) * coeff_G1(p, m12 - 1, m22))
        emit(BasisLabel(m12, m22 - 1, m11), 1,
             lambda: (-1) ** t * math.sqrt((m12 + m22 - 1) / (m11 + m22)) * coeff_G2(p, m12, m22 - 1))
    else:
        raise ValueError(f"unknown generator {symbol!r}")
    return tuple(out)


def cartan_eigenvalue(k: int, label: BasisLabel, p: int) -> float:
    m12, m22, m11 = label
    if k == 1:
        return -p / 2 + m11
    if k == 2:
        return p / 2 + m12 + m22 - m11
    raise ValueError(f"Cartan index must be 1 or 2, got {k}")


class StateVector:
    """Finite complex combination of basis labels.

    Exact zeros are never stored.  Vectors support ``+``, ``-``, scalar
    multiplication and equality up to exact amplitudes.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[BasisLabel, complex] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[BasisLabel, complex] = {}
        for lab, amp in items:
            lab = BasisLabel(*lab)
            acc[lab] = acc.get(lab, 0) + amp
        self.terms = {lab: complex(a) for lab, a in acc.items() if a != 0}

    @classmethod
    def basis(cls, label: Sequence[int], amplitude: complex = 1.0) -> StateVector:
        return cls({BasisLabel(*label): amplitude})

    @classmethod
    def vacuum(cls) -> StateVector:
        return cls.basis(VACUUM)

    @classmethod
    def zero(cls) -> StateVector:
        return cls()

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __getitem__(self, label) -> complex:
        return self.terms.get(BasisLabel(*label), 0j)

    def items(self):
        return self.terms.items()

    def labels(self):
        return self.terms.keys()

    def __add__(self, other: StateVector) -> StateVector:
        acc = dict(self.terms)
        for lab, a in other.terms.items():
            acc[lab] = acc.get(lab, 0) + a
        return StateVector(acc)

    def __sub__(self, other: StateVector) -> StateVector:
        return self + (-1) * other

    def __neg__(self) -> StateVector:
        return (-1) * self

    def __mul__(self, scalar: complex) -> StateVector:
        if scalar == 0:
            return StateVector()
        out = StateVector.__new__(StateVector)
        out.terms = {lab: a * scalar for lab, a in self.terms.items()}
        return out

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, StateVector):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self) -> str:
        body = ", ".join(f"{tuple(lab)}: {a:.6g}" for lab, a in sorted(self.terms.items()))
        return f"StateVector({{{body}}})"

    def norm_squared(self) -> float:
        return sum(abs(a) ** 2 for a in self.terms.values())

    def max_abs(self) -> float:
        """Largest amplitude magnitude; 0 for the zero vector."""
        return max((abs(a) for a in self.terms.values()), default=0.0)


def apply_h(k: int, state: StateVector, p: int) -> StateVector:
    return StateVector({lab: cartan_eigenvalue(k, lab, p) * a for lab, a in state.items()})


def apply_generator(
    j: int, sign: str, state: StateVector, p: int, coefficients: str = DEFAULT_COEFFICIENTS
) -> StateVector:
    """Apply c_j^sign (``sign`` is ``"+"`` or ``"-"``) to a state of V(p)."""
    if j not in (1, 2) or sign not in ("+", "-"):
        raise ValueError(f"no generator c{j}{sign}")
    return apply_symbol(f"c{j}{sign}", state, p, coefficients)


def apply_symbol(
    symbol: str, state: StateVector, p: int, coefficients: str = DEFAULT_COEFFICIENTS
) -> StateVector:
    if symbol == "h1":
        return apply_h(1, state, p)
    if symbol == "h2":
        return apply_h(2, state, p)
    acc: dict[BasisLabel, complex] = {}
    for lab, a in state.items():
        for target, c in generator_terms(symbol, lab, p, coefficients):
            acc[target] = acc.get(target, 0) + a * c
    return StateVector(acc)


def apply_word(
    word: Sequence[str], state: StateVector, p: int, coefficients: str = DEFAULT_COEFFICIENTS
) -> StateVector:
    """Apply ``word[0] word[1] ... word[-1]`` to ``state`` (rightmost symbol first)."""
    for symbol in reversed(word):
        if symbol not in WORD_SYMBOLS:
            raise ValueError(f"unknown symbol {symbol!r}")
        state = apply_symbol(symbol, state, p, coefficients)
    return state


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b>, antilinear in the first argument."""
    small, large = (a, b) if len(a) <= len(b) else (b, a)
    total = 0j
    for lab in small.labels():
        if lab in large.terms:
            total += a.terms[lab].conjugate() * b.terms[lab]
    return total
