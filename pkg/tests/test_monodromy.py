"""Monodromy elements, RTT, Yangian generators, invariance, intertwiners."""

import itertools

import pytest

from yanginv.fock import (
    StateVector,
    apply_generator,
    chain_basis,
    conjugate,
    highest_weight_state,
    symmetric,
    tensor_highest_weight,
)
from yanginv.invariants import (
    build_invariant,
    four_two,
    monodromy_of,
    three_two,
    two_one,
)
from yanginv.lax import apply_lax, hopping_rmatrix
from yanginv.monodromy import (
    MonodromySpec,
    SiteSpec,
    check_adjoint_action,
    check_intertwiner,
    check_invariance,
    check_level_one_commutators,
    check_rtt,
    default_samples,
    intertwiner_matrix,
    monodromy_element,
    transfer_matrix_apply,
    yangian_generator_apply,
)
from yanginv.rational import Poly, Q


def explicit_level_one(spec, a, b, vec):
    """Oracle: M^(1)_ab = sum_i J^i_ba."""
    out = StateVector.zero(vec.sites)
    for i in range(spec.length):
        out = out + apply_generator(vec, i, b, a)
    return out


def explicit_level_two(spec, a, b, vec):
    """Oracle: M^(2)_ab = sum_{i<j} sum_c J^i_ca J^j_bc + sum_i v_i J^i_ba."""
    out = StateVector.zero(vec.sites)
    n = spec.n
    for i in range(spec.length):
        for j in range(i + 1, spec.length):
            for c in range(1, n + 1):
                out = out + apply_generator(
                    apply_generator(vec, i, c, a), j, b, c
                )
    for i, site in enumerate(spec.sites):
        out = out + apply_generator(vec, i, b, a) * site.v
    return out


def test_single_site_matches_apply_lax():
    rep = symmetric(2, 2)
    spec = MonodromySpec(2, (SiteSpec(rep, Q(1, 3)),))
    hw = highest_weight_state(rep)
    u = Q(7, 2)
    for a in range(1, 3):
        for b in range(1, 3):
            assert monodromy_element(spec, a, b, hw, u) == apply_lax(
                hw, 0, u - Q(1, 3), a, b
            )


def test_creation_element_annihilates_invariant():
    spec = two_one(2, 1)
    mono = monodromy_of(spec)
    psi = build_invariant(spec)
    for u in default_samples(mono):
        assert monodromy_element(mono, 1, 2, psi, u).is_zero()
        assert monodromy_element(mono, 2, 1, psi, u).is_zero()


def test_diagonal_elements_give_clearing_polynomial():
    """P_aa(u) on the two-site invariant is prod(u - v_i) times it,
    verified symbolically with a formal u."""
    spec = two_one(2, 1)
    mono = monodromy_of(spec)
    psi = build_invariant(spec)
    formal = Poly.x()
    clearing = mono.inhomogeneity_polynomial()
    for a in (1, 2):
        result = monodromy_element(mono, a, a, psi, formal)
        for key, coeff in psi.terms.items():
            got = result.terms[key]
            assert got == clearing * coeff
        assert len(result.terms) == len(psi.terms)


@pytest.mark.parametrize("sites", [
    (SiteSpec(symmetric(1, 2), Q(0)),),
    (SiteSpec(conjugate(2, 2), Q(1, 2)), SiteSpec(symmetric(1, 2), Q(-1, 3))),
])
def test_rtt(sites):
    spec = MonodromySpec(2, sites)
    report = check_rtt(spec, [Q(4)], [Q(11, 2)])
    assert report.passed, report.failures


def test_rtt_equal_arguments_trivial():
    """At u = u' both sides of the cleared RTT identity vanish."""
    spec = MonodromySpec(2, (SiteSpec(symmetric(1, 2), Q(0)),))
    base = tensor_highest_weight(spec.reps())
    u = Q(3)
    for a, b, c, d in itertools.product((1, 2), repeat=4):
        first = monodromy_element(spec, c, d, base, u)
        lhs = (
            monodromy_element(spec, a, b, first, u)
            - monodromy_element(
                spec, c, d, monodromy_element(spec, a, b, base, u), u
            )
        ) * Q(0)
        rhs = monodromy_element(
            spec, c, b, monodromy_element(spec, a, d, base, u), u
        ) - monodromy_element(
            spec, c, b, monodromy_element(spec, a, d, base, u), u
        )
        assert lhs.is_zero() and rhs.is_zero()


@pytest.mark.parametrize("sites", [
    (SiteSpec(symmetric(2, 2), Q(1, 2)),),
    (SiteSpec(conjugate(1, 2), Q(-1)), SiteSpec(symmetric(1, 2), Q(2))),
    (SiteSpec(conjugate(1, 3), Q(1, 3)), SiteSpec(symmetric(2, 3), Q(-2))),
])
def test_yangian_generators_match_explicit_sums(sites):
    n = sites[0].rep.n
    spec = MonodromySpec(n, sites)
    for key in chain_basis(spec.reps()):
        vec = StateVector.monomial(spec.reps(), key)
        for a in range(1, n + 1):
            for b in range(1, n + 1):
                assert yangian_generator_apply(
                    spec, 1, a, b, vec
                ) == explicit_level_one(spec, a, b, vec)
                assert yangian_generator_apply(
                    spec, 2, a, b, vec
                ) == explicit_level_two(spec, a, b, vec)


def test_single_site_level_two_is_inhomogeneity_times_j():
    spec = MonodromySpec(2, (SiteSpec(symmetric(1, 2), Q(5, 7)),))
    vec = tensor_highest_weight(spec.reps())
    got = yangian_generator_apply(spec, 2, 2, 1, vec)
    assert got == apply_generator(vec, 0, 1, 2) * Q(5, 7)


def test_invariance_detects_non_singlet():
    spec = two_one(2, 1)
    mono = monodromy_of(spec)
    omega = tensor_highest_weight(mono.reps())
    report = check_invariance(mono, omega)
    assert not report.passed
    assert any("P_" in f for f in report.failures)


def test_invariance_rejects_zero_vector():
    spec = two_one(2, 1)
    mono = monodromy_of(spec)
    report = check_invariance(mono, StateVector.zero(mono.reps()))
    assert not report.passed


def test_transfer_matrix_eigenvalue():
    spec = four_two(2, 1, 1, Q(5, 2))
    mono = monodromy_of(spec)
    psi = build_invariant(spec)
    u = Q(13, 2)
    assert transfer_matrix_apply(mono, psi, u) == psi * (
        mono.clearing_factor(u) * 2
    )


def test_invariance_implies_generator_annihilation():
    """Passing check_invariance comes with M^(1) and M^(2) annihilating
    the candidate, verified independently via the generator extraction."""
    spec = three_two(2, 1, 1)
    mono = monodromy_of(spec)
    psi = build_invariant(spec)
    assert check_invariance(mono, psi).passed
    for a in range(1, 3):
        for b in range(1, 3):
            assert yangian_generator_apply(mono, 1, a, b, psi).is_zero()
            assert yangian_generator_apply(mono, 2, a, b, psi).is_zero()


@pytest.mark.parametrize("sites", [
    (SiteSpec(conjugate(1, 2), Q(-1)), SiteSpec(symmetric(1, 2), Q(2))),
    (SiteSpec(symmetric(2, 2), Q(1, 2)),),
])
def test_adjoint_action(sites):
    spec = MonodromySpec(2, sites)
    report = check_adjoint_action(spec, [Q(4)])
    assert report.passed, report.failures


@pytest.mark.parametrize("sites", [
    (SiteSpec(conjugate(1, 2), Q(-1)), SiteSpec(symmetric(2, 2), Q(2))),
    (SiteSpec(symmetric(1, 3), Q(1, 2)), SiteSpec(conjugate(1, 3), Q(0))),
])
def test_level_one_commutators(sites):
    n = sites[0].rep.n
    spec = MonodromySpec(n, sites)
    report = check_level_one_commutators(spec)
    assert report.passed, report.failures


def test_intertwiner_two_one_is_scaled_identity():
    """O for the two-site invariant reduces to s! times the identity after
    the space identification."""
    for s, n in ((1, 2), (2, 2), (2, 3)):
        spec = two_one(n, s)
        mono = monodromy_of(spec)
        psi = build_invariant(spec)
        omat = intertwiner_matrix(mono, 1, psi)
        from math import factorial

        for (row, col), val in omat.items():
            assert (row == col) == (val != 0)
            if row == col:
                assert val == factorial(s)
        report = check_intertwiner(mono, 1, psi, [Q(17, 2)])
        assert report.passed, report.failures


def test_intertwiner_three_two_bootstrap():
    spec = three_two(2, 1, 1)
    mono = monodromy_of(spec)
    psi = build_invariant(spec)
    report = check_intertwiner(mono, 2, psi, [Q(19, 2), Q(10)])
    assert report.passed, report.failures


def test_intertwiner_four_two_is_hopping_rmatrix():
    """O for the four-site invariant is proportional to the hopping
    R-matrix at z = v3 - v4 (projective matrix comparison)."""
    z = Q(5, 2)
    spec = four_two(2, 1, 1, z)
    mono = monodromy_of(spec)
    psi = build_invariant(spec)
    report = check_intertwiner(mono, 2, psi, [Q(23, 2)])
    assert report.passed, report.failures
    omat = intertwiner_matrix(mono, 2, psi)
    rmat = hopping_rmatrix(1, 1, 2, z).matrix()
    ratio = None
    for key, val in rmat.items():
        oval = omat.get(key, Q(0))
        if ratio is None and val != 0:
            ratio = oval / val
        assert oval == ratio * val
    for key, val in omat.items():
        assert key in rmat or val == 0


def test_default_samples_avoid_inhomogeneities():
    spec = MonodromySpec(
        2, (SiteSpec(symmetric(1, 2), Q(4)), SiteSpec(symmetric(1, 2), Q(5)))
    )
    samples = default_samples(spec)
    assert len(samples) == 3
    assert all(s not in (Q(4), Q(5)) for s in samples)


def test_intertwiner_three_one_bootstrap():
    """The one-conjugate-site three-vertex intertwining relation:
    two fundamental Lax factors against one, with the shifted argument."""
    from yanginv.invariants import three_one

    spec = three_one(2, 1, 1)
    mono = monodromy_of(spec)
    psi = build_invariant(spec)
    report = check_intertwiner(mono, 1, psi, [Q(21, 2), Q(12)])
    assert report.passed, report.failures
    spec = three_one(2, 2, 1)
    mono = monodromy_of(spec)
    report = check_intertwiner(mono, 1, build_invariant(spec), [Q(25, 2)])
    assert report.passed, report.failures


def test_intertwiner_rejects_non_invariant():
    spec = two_one(2, 1)
    mono = monodromy_of(spec)
    omega = tensor_highest_weight(mono.reps())
    report = check_intertwiner(mono, 1, omega, [Q(17, 2)])
    assert not report.passed
