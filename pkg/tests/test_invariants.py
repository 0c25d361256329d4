"""Closed-form invariants and the coefficient-extraction route."""

from math import factorial

import pytest

from yanginv.fock import RepKind, projective_ratio
from yanginv.invariants import (
    ConstraintViolation,
    Family,
    InvariantSpec,
    build_invariant,
    four_two,
    four_two_coefficients,
    grassmannian_eval,
    grassmannian_matches,
    monodromy_of,
    three_one,
    three_two,
    two_one,
)
from yanginv.monodromy import check_invariance
from yanginv.rational import Q, RationalFunction


def test_two_one_explicit_form():
    """n=2, s=1: bdag^1_1 adag^2_1 |0> + bdag^1_2 adag^2_2 |0>."""
    psi = build_invariant(two_one(2, 1))
    assert psi.terms == {
        ((1, 0), (1, 0)): Q(1),
        ((0, 1), (0, 1)): Q(1),
    }


def test_three_two_trivial_is_vacuum():
    psi = build_invariant(three_two(2, 0, 0))
    assert psi.terms == {((0, 0), (0, 0), (0, 0)): Q(1)}


def test_four_two_coefficient_ratio():
    """s3 = s4 = 1, z = 5/2: d_0/d_1 = z - s3 + 1 = 5/2."""
    coeffs, anchor = four_two_coefficients(1, 1, Q(5, 2))
    assert anchor == 0
    assert coeffs[0] / coeffs[1] == Q(5, 2)


def test_four_two_recursion_general():
    s3, s4, z = 2, 2, Q(7, 3)
    coeffs, _ = four_two_coefficients(s3, s4, z)
    for k in range(len(coeffs) - 1):
        lhs = coeffs[k] / coeffs[k + 1]
        rhs = Q((k + 1)) * (z - s3 + k + 1) / ((s3 - k) * (s4 - k))
        assert lhs == rhs


def test_four_two_special_point_anchoring():
    coeffs, anchor = four_two_coefficients(2, 2, Q(1))  # z = s3 - 1
    assert anchor == 1
    assert coeffs[0] == 0 and coeffs[1] == 1
    with pytest.raises(ConstraintViolation):
        four_two_coefficients(1, 1, Q(-1))  # m = 2 > min(s3, s4)


def test_four_two_large_z_degeneration():
    """With formal z the ratio d_1/d_0 is a rational function vanishing at
    z -> infinity: the k=0 term dominates and the state degenerates to a
    product of two-site structures."""
    z = RationalFunction.variable()
    coeffs, anchor = four_two_coefficients(2, 1, z)
    assert anchor == 0
    ratio = coeffs[1] / coeffs[0]
    assert ratio.num.degree < ratio.den.degree


def test_monodromy_site_patterns():
    mono = monodromy_of(two_one(2, 2, v2=Q(3)))
    kinds = [s.rep.kind for s in mono.sites]
    assert kinds == [RepKind.CONJUGATE, RepKind.SYMMETRIC]
    assert mono.sites[0].v == Q(3) - 2 - 2 + 1
    assert mono.conjugate_count == 1

    mono = monodromy_of(three_one(3, 1, 2, v1=Q(0)))
    kinds = [s.rep.kind for s in mono.sites]
    assert kinds == [RepKind.CONJUGATE, RepKind.SYMMETRIC, RepKind.SYMMETRIC]
    assert [s.rep.s for s in mono.sites] == [3, 1, 2]
    assert [s.v for s in mono.sites] == [Q(0), Q(5), Q(4)]

    mono = monodromy_of(four_two(2, 1, 2, Q(5, 2), v3=Q(0)))
    kinds = [s.rep.kind for s in mono.sites]
    assert kinds == [
        RepKind.CONJUGATE,
        RepKind.CONJUGATE,
        RepKind.SYMMETRIC,
        RepKind.SYMMETRIC,
    ]
    assert mono.sites[3].v == -Q(5, 2)
    assert mono.conjugate_count == 2


def test_constraint_validation():
    with pytest.raises(ConstraintViolation):
        InvariantSpec(Family.TWO_ONE, 2, (1, 2))
    with pytest.raises(ConstraintViolation):
        InvariantSpec(Family.FOUR_TWO, 2, (1, 1))  # z missing
    with pytest.raises(ConstraintViolation):
        InvariantSpec(Family.TWO_ONE, 2, (1,), z=Q(1))


def test_grassmannian_two_one_exact():
    """The extraction reproduces the invariant exactly (not only
    projectively): the s!(-1)^s prefactor cancels the expansion signs."""
    for s in (1, 2, 3):
        spec = two_one(2, s)
        assert grassmannian_eval(spec) == build_invariant(spec)


def test_grassmannian_three_site_exact():
    for spec in (three_one(2, 1, 2), three_two(2, 2, 1), three_one(3, 1, 1)):
        assert grassmannian_eval(spec) == build_invariant(spec)


def test_grassmannian_four_two_ratio():
    """The extraction differs from the anchored recursion by exactly
    1/(s3! s4!)."""
    for s3, s4, z in ((1, 1, Q(5, 2)), (2, 1, Q(7, 3)), (2, 2, Q(-9, 4))):
        spec = four_two(2, s3, s4, z)
        got = grassmannian_eval(spec)
        expected = build_invariant(spec) * Q(1, factorial(s3) * factorial(s4))
        assert got == expected


def test_grassmannian_matches_report():
    report = grassmannian_matches(four_two(2, 1, 1, Q(7, 3)))
    assert report.passed
    assert report.details["ratio"] == 1


def test_special_point_invariance_and_extraction():
    """z = s3 - m keeps Yangian invariance and the regularized extraction
    agrees with the re-anchored recursion."""
    for s3, s4, m in ((1, 1, 1), (2, 2, 1), (2, 2, 2), (2, 1, 1)):
        z = Q(s3 - m)
        spec = four_two(2, s3, s4, z)
        psi = build_invariant(spec)
        assert check_invariance(monodromy_of(spec), psi).passed
        got = grassmannian_eval(spec)
        ratio = projective_ratio(got, psi)
        assert ratio is not None and ratio != 0


def test_invariance_across_ranks():
    for spec in (
        two_one(3, 1),
        three_one(3, 1, 1),
        three_two(3, 1, 2),
        four_two(3, 1, 1, Q(5, 2)),
    ):
        assert check_invariance(monodromy_of(spec), build_invariant(spec)).passed


def test_two_one_integrand_extraction_literal():
    """The s=1 two-site integrand at the Laurent level: extracting the
    total residue of c^{-2} exp(-c X) |0> against the s!(-1)^s prefactor
    yields exactly the creation bilinear acting on the vacuum."""
    from yanginv.fock import conjugate, symmetric
    from yanginv.invariants import creation_exponential_series
    from yanginv.rational import LaurentSeries, laurent_extract

    sites = (conjugate(1, 2), symmetric(1, 2))
    series = creation_exponential_series(sites, ("c",), {"c": (0, 1)}, {"c": 1})
    prefactor = LaurentSeries(("c",), {(-2,): Q(-1)})  # s!(-1)^s / c^{s+1}
    vec = laurent_extract(prefactor * series, (-1,))
    assert vec == build_invariant(two_one(2, 1))
    # the c^1 coefficient of the bare exponential is -X |0>
    minus_x = laurent_extract(series, (1,))
    assert minus_x == build_invariant(two_one(2, 1)) * Q(-1)


def test_grassmannian_single_link_three_two():
    """ThreeTwo with s2 = 0 reduces to a single link variable."""
    spec = three_two(2, 1, 0)
    assert grassmannian_eval(spec) == build_invariant(spec)


def test_laurent_series_carries_rational_function_coefficients():
    """The deformation parameter can ride along as a formal coefficient."""
    from yanginv.rational import LaurentSeries, Poly

    z = RationalFunction(Poly([0, 1]))
    s = LaurentSeries(("c",), {(-1,): z, (0,): RationalFunction.const(1)})
    t = LaurentSeries(("c",), {(1,): z})
    prod = s * t
    assert prod.extract((0,)) == z * z
    assert prod.extract((1,)) == z
