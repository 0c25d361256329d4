"""Oscillator representations: generators, weights, dimensions, pairing."""

import itertools
from math import comb

import pytest

from yanginv.fock import (
    OccupancyMismatch,
    StateVector,
    apply_generator,
    basis_states,
    chain_basis,
    conjugate,
    highest_weight_state,
    norm_sq,
    pairing,
    projective_ratio,
    symmetric,
    tensor_highest_weight,
)
from yanginv.rational import Q


def brute_force_vacuum_overlap(powers_bra, powers_ket):
    """<0| a^powers_bra adag^powers_ket |0> for a single oscillator mode,
    by recursive commutation with [a, adag] = 1.

    Moves one annihilation operator through the creation string.
    """
    if powers_bra == 0 and powers_ket == 0:
        return 1
    if powers_bra == 0 or powers_ket == 0:
        return 0
    # a adag^k |0> = k adag^{k-1} |0>
    return powers_ket * brute_force_vacuum_overlap(
        powers_bra - 1, powers_ket - 1
    )


def test_number_operator_on_power_state():
    # J_11 on (adag_1)^2 |0> for n=2, s=2
    rep = symmetric(2, 2)
    v = StateVector.monomial((rep,), ((2, 0),))
    out = apply_generator(v, 0, 1, 1)
    assert out == v * Q(2)


def test_conjugate_sign_convention():
    # Jbar_22 on (bdag_2)|0> for n=2, s=1 gives -1 times the state
    rep = conjugate(1, 2)
    v = StateVector.monomial((rep,), ((0, 1),))
    out = apply_generator(v, 0, 2, 2)
    assert out == v * Q(-1)


@pytest.mark.parametrize("rep", [
    symmetric(1, 2), symmetric(2, 2), symmetric(3, 2), symmetric(4, 2),
    conjugate(1, 2), conjugate(2, 2), conjugate(4, 2),
    symmetric(2, 3), conjugate(2, 3), symmetric(4, 3), conjugate(3, 3),
])
def test_gln_commutators(rep):
    """[J_ab, J_cd] = delta_cb J_ad - delta_ad J_cb on every basis state."""
    n = rep.n
    for st in basis_states(rep):
        v = StateVector.monomial((rep,), (st,))
        for a, b, c, d in itertools.product(range(1, n + 1), repeat=4):
            lhs = apply_generator(
                apply_generator(v, 0, c, d), 0, a, b
            ) - apply_generator(apply_generator(v, 0, a, b), 0, c, d)
            rhs = StateVector.zero((rep,))
            if c == b:
                rhs = rhs + apply_generator(v, 0, a, d)
            if a == d:
                rhs = rhs - apply_generator(v, 0, c, b)
            assert lhs == rhs


def test_specific_commutator_equals_cartan():
    # [J_12, J_21] = J_11 - J_22 on every basis state (n=2, s=3)
    rep = symmetric(3, 2)
    for st in basis_states(rep):
        v = StateVector.monomial((rep,), (st,))
        lhs = apply_generator(
            apply_generator(v, 0, 2, 1), 0, 1, 2
        ) - apply_generator(apply_generator(v, 0, 1, 2), 0, 2, 1)
        rhs = apply_generator(v, 0, 1, 1) - apply_generator(v, 0, 2, 2)
        assert lhs == rhs


@pytest.mark.parametrize("rep,expected", [
    (symmetric(3, 2), 3),
    (symmetric(2, 3), 2),
    (conjugate(3, 2), -3),
    (conjugate(2, 3), -2),
])
def test_number_operator_trace(rep, expected):
    for st in basis_states(rep):
        v = StateVector.monomial((rep,), (st,))
        total = StateVector.zero((rep,))
        for a in range(1, rep.n + 1):
            total = total + apply_generator(v, 0, a, a)
        assert total == v * Q(expected)


@pytest.mark.parametrize("s,n", [(0, 2), (1, 2), (3, 2), (2, 3), (4, 3)])
def test_dimension_matches_basis_count(s, n):
    rep = symmetric(s, n)
    assert len(list(basis_states(rep))) == rep.dimension
    assert rep.dimension == comb(s + n - 1, n - 1)
    rep = conjugate(s, n)
    assert len(list(basis_states(rep))) == rep.dimension


def test_highest_weight_states():
    assert highest_weight_state(symmetric(3, 2)).terms == {((3, 0),): Q(1)}
    assert highest_weight_state(conjugate(2, 3)).terms == {((0, 0, 2),): Q(1)}
    assert highest_weight_state(symmetric(0, 2)).terms == {((0, 0),): Q(1)}


def test_highest_weight_annihilation_and_weight():
    # J_ab |sigma> = 0 for a < b; J_aa eigenvalue s*delta_{a1}
    rep = symmetric(3, 3)
    hw = highest_weight_state(rep)
    for a in range(1, 4):
        for b in range(a + 1, 4):
            assert apply_generator(hw, 0, a, b).is_zero()
        diag = apply_generator(hw, 0, a, a)
        assert diag == hw * Q(3 if a == 1 else 0)
    rep = conjugate(2, 3)
    hw = highest_weight_state(rep)
    for a in range(1, 4):
        for b in range(a + 1, 4):
            assert apply_generator(hw, 0, a, b).is_zero()
        diag = apply_generator(hw, 0, a, a)
        assert diag == hw * Q(-2 if a == 3 else 0)


def test_pairing_unit_occupations():
    rep = symmetric(1, 2)
    v = StateVector((rep, rep), {(((1, 0)), ((0, 1))): Q(0)})  # dropped zero
    v = StateVector.monomial((rep, rep), ((1, 0), (0, 1)), Q(3, 7))
    assert pairing(((1, 0), (0, 1)), v) == Q(3, 7)
    assert pairing(((0, 1), (1, 0)), v) == 0


def test_pairing_norm_consistency():
    """The monomial (adag_1)^2|0> has <raw|raw> = 2 by brute-force
    commutation; pairing divides that norm^2 out, so the stated basis
    state is orthonormal."""
    assert brute_force_vacuum_overlap(2, 2) == 2
    assert norm_sq((2, 0)) == 2
    rep = symmetric(2, 2)
    v = StateVector.monomial((rep,), ((2, 0),))
    assert pairing(((2, 0),), v) == 1


def test_pairing_occupancy_mismatch():
    rep = symmetric(2, 2)
    v = highest_weight_state(rep)
    with pytest.raises(OccupancyMismatch):
        pairing(((1, 0),), v)


def test_zero_vector_is_first_class():
    rep = symmetric(1, 2)
    v = StateVector.monomial((rep,), ((1, 0),))
    # annihilate: J_12 requires occupation in slot 2
    out = apply_generator(v, 0, 2, 1)
    out = apply_generator(out, 0, 2, 1)
    assert out.is_zero()
    assert (out + out).is_zero()


def test_tensor_highest_weight_and_chain_basis():
    sites = (conjugate(1, 2), symmetric(1, 2))
    omega = tensor_highest_weight(sites)
    assert omega.terms == {((0, 1), (1, 0)): Q(1)}
    assert len(list(chain_basis(sites))) == 4


def test_projective_ratio():
    rep = symmetric(1, 2)
    v = StateVector((rep,), {((1, 0),): Q(2), ((0, 1),): Q(4)})
    w = StateVector((rep,), {((1, 0),): Q(1), ((0, 1),): Q(2)})
    assert projective_ratio(v, w) == 2
    w_bad = StateVector((rep,), {((1, 0),): Q(1), ((0, 1),): Q(3)})
    assert projective_ratio(v, w_bad) is None
