"""Algebraic Bethe ansatz specialized to Yangian-invariant eigenvectors.

For gl(2), invariance of a Bethe vector B(u_1)...B(u_P)|Omega> is
equivalent to the degenerate functional relations

    1 = alpha(u) Q(u-1)/Q(u),      1 = delta(u) Q(u+1)/Q(u),

which decouple into 1 = alpha(u) delta(u-1) (no Bethe roots) and the
difference equation Q(u) = delta(u) Q(u+1).  The gl(n) generalization
replaces (alpha, delta) by the n vacuum eigenvalues mu_a and couples
n-1 nested Q-functions.

All Bethe vectors are built from *cleared* creation-type monodromy
elements Btilde(u) = P_12(u), which are polynomial in u.  A root that
collides with an inhomogeneity still yields an exact finite vector, but
not by naive evaluation: the polynomial application is deflated by its
clearing zero first (see bethe_vector), which is the rational-arithmetic
form of the usual regularization of such singular roots.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import List, Optional, Sequence, Tuple

from .fock import RepKind, StateVector, tensor_highest_weight
from .lax import CheckReport
from .monodromy import MonodromySpec, monodromy_element
from .rational import Poly, Q, RationalFunction


class NoSolution(Exception):
    """The Q difference equation has no polynomial solution below the bound."""


class AmbiguousSolution(Exception):
    """More than one monic polynomial solves the Q difference equation."""


class CoincidentRoots(Exception):
    """Bethe roots must be pairwise distinct."""


@dataclass(frozen=True)
class VacuumEigenvalues:
    """Eigenvalues mu_a(u) of the diagonal monodromy elements on the
    reference state, in the f == 1 normalization."""

    mu: Tuple[RationalFunction, ...]

    @property
    def alpha(self) -> RationalFunction:
        return self.mu[0]

    @property
    def delta(self) -> RationalFunction:
        return self.mu[1]


@dataclass(frozen=True)
class QFunction:
    """Monic polynomial with rational roots: Q(u) = prod_k (u - u_k)."""

    roots: Tuple[Fraction, ...]

    @property
    def polynomial(self) -> Poly:
        return Poly.from_roots(self.roots)

    def __call__(self, x):
        out = Q(1) if not isinstance(x, Poly) else Poly.const(1)
        for r in self.roots:
            out = out * (x - r)
        return out

    @property
    def degree(self) -> int:
        return len(self.roots)


def rep_weight(rep, a: int) -> int:
    """Component a (1..n) of the highest weight: (s,0,..,0) or (0,..,0,-s)."""
    if rep.kind is RepKind.SYMMETRIC:
        return rep.s if a == 1 else 0
    return -rep.s if a == rep.n else 0


def vacuum_eigenvalues(spec: MonodromySpec) -> VacuumEigenvalues:
    """mu_a(u) = prod_i (u - v_i + xi_i^(a)) / (u - v_i), exactly reduced."""
    mus = []
    for a in range(1, spec.n + 1):
        num = Poly.const(1)
        den = Poly.const(1)
        for site in spec.sites:
            num = num * Poly.linear(-site.v + rep_weight(site.rep, a))
            den = den * Poly.linear(-site.v)
        mus.append(RationalFunction(num, den))
    return VacuumEigenvalues(tuple(mus))


def _eval_safe(rf: RationalFunction, x):
    try:
        return rf(x)
    except ZeroDivisionError:
        return None


def default_fr_samples(count: int = 4, avoid=()):
    """Deterministic rational sample points away from the given poles."""
    avoid = set(Q(a) for a in avoid)
    out = []
    cand = Q(101, 7)
    while len(out) < count:
        if all(cand + shift not in avoid for shift in (-1, 0, 1)):
            out.append(cand)
        cand += Q(3, 2)
    return out


def check_functional_relations_gl2(
    ev: VacuumEigenvalues, q: QFunction, samples: Optional[Sequence] = None
) -> CheckReport:
    """Exact verification of the degenerate relations and their decoupled
    form, per sample point."""
    report = CheckReport("functional-relations-gl2")
    alpha, delta = ev.alpha, ev.delta
    poles = [r for r in _poly_rational_roots(alpha.den)] + [
        r for r in _poly_rational_roots(delta.den)
    ]
    if samples is None:
        samples = default_fr_samples(avoid=poles + list(q.roots))
    for u in samples:
        u = Q(u)
        qu, qm, qp = q(u), q(u - 1), q(u + 1)
        av, dv = _eval_safe(alpha, u), _eval_safe(delta, u)
        if av is None or dv is None or qu == 0:
            report.fail(f"sample u={u} hits a pole/root; re-select")
            continue
        if av * qm != qu:
            report.fail(f"u={u}: alpha(u)Q(u-1) != Q(u)")
        if dv * qp != qu:
            report.fail(f"u={u}: delta(u)Q(u+1) != Q(u)")
        dm = _eval_safe(delta, u - 1)
        if dm is None:
            report.fail(f"u={u}: delta pole at u-1; re-select")
        elif av * dm != 1:
            report.fail(f"u={u}: alpha(u)delta(u-1) != 1")
        if dv * qp != qu:  # Q(u)/Q(u+1) = delta(u), cleared
            report.fail(f"u={u}: Q(u)/Q(u+1) != delta(u)")
    return report


def check_functional_relations_gln(
    mus: Sequence[RationalFunction],
    qs: Sequence[QFunction],
    samples: Optional[Sequence] = None,
) -> CheckReport:
    """The nested gl(n) relations plus both separated forms, exactly.

    Nested (a = 1..n, with Q_0 = Q_n = 1):
        1 = mu_a(u) Q_{a-1}(u+1)/Q_{a-1}(u) * Q_a(u-1)/Q_a(u)
    Separated:
        1 = prod_a mu_a(u - a + 1)
        Q_k(u)/Q_k(u+1) = prod_{a=k+1..n} mu_a(u - a + k + 1)
    """
    report = CheckReport("functional-relations-gln")
    n = len(mus)
    if len(qs) != n - 1:
        report.fail(f"need {n - 1} Q-functions for gl({n})")
        return report
    poles: List[Fraction] = []
    for mu in mus:
        poles += _poly_rational_roots(mu.den)
    root_pool: List[Fraction] = []
    for q in qs:
        root_pool += list(q.roots)
    if samples is None:
        samples = default_fr_samples(
            avoid=[p + k for p in poles + root_pool for k in range(-n, n + 1)]
        )
    one = QFunction(())
    padded = [one] + list(qs) + [one]
    for u in samples:
        u = Q(u)
        ok = True
        for a in range(1, n + 1):
            mu_v = _eval_safe(mus[a - 1], u)
            qprev, qcur = padded[a - 1], padded[a]
            if mu_v is None or qprev(u) == 0 or qcur(u) == 0:
                report.fail(f"u={u}: pole/root collision at level {a}")
                ok = False
                continue
            lhs = mu_v * qprev(u + 1) * qcur(u - 1)
            rhs = qprev(u) * qcur(u)
            if lhs != rhs:
                report.fail(f"u={u}: nested relation fails at level {a}")
                ok = False
        if not ok:
            continue
        prod = Q(1)
        bad = False
        for a in range(1, n + 1):
            val = _eval_safe(mus[a - 1], u - a + 1)
            if val is None:
                bad = True
                break
            prod *= val
        if bad:
            report.fail(f"u={u}: pole in separated mu-product")
        elif prod != 1:
            report.fail(f"u={u}: separated mu-product != 1")
        for k in range(1, n):
            qk = padded[k]
            prod = Q(1)
            bad = False
            for a in range(k + 1, n + 1):
                val = _eval_safe(mus[a - 1], u - a + k + 1)
                if val is None:
                    bad = True
                    break
                prod *= val
            if bad:
                report.fail(f"u={u}: pole in separated Q-level {k}")
            elif qk(u) != prod * qk(u + 1):
                report.fail(f"u={u}: separated Q-relation fails at level {k}")
    return report


def _poly_rational_roots(p: Poly) -> List[Fraction]:
    roots, _ = p.rational_roots()
    return roots


def solve_q(delta: RationalFunction, degree_bound: int) -> QFunction:
    """Solve Q(u) = delta(u) Q(u+1) for a monic polynomial Q.

    Scans degrees 0..degree_bound, solving the linear system for the
    coefficients exactly; asserts the solution space is one-dimensional at
    the correct degree (the monic normalization pins the scale) and
    extracts all roots by exact rational deflation.
    """
    num, den = delta.num, delta.den
    # clear the leading rational factor: den*Q(u) - num*Q(u+1) = 0
    solutions = []
    for d in range(degree_bound + 1):
        basis_polys = []
        for j in range(d + 1):
            mono = Poly([0] * j + [1])
            basis_polys.append(den * mono - num * mono.shift(1))
        max_len = max(len(p.coeffs) for p in basis_polys) if basis_polys else 0
        rows = max_len
        # unknowns c_0..c_{d-1}; the monic term contributes the constant part
        mat = [[Q(0)] * d for _ in range(rows)]
        rhs = [Q(0)] * rows
        for j in range(d):
            for p_idx, c in enumerate(basis_polys[j].coeffs):
                mat[p_idx][j] = c
        for p_idx, c in enumerate(basis_polys[d].coeffs):
            rhs[p_idx] = -c
        sol = _solve_affine(mat, rhs)
        if sol is None:
            continue
        coeffs, nullity = sol
        if nullity > 0:
            raise AmbiguousSolution(
                f"Q-solution space at degree {d} is {nullity + 1}-dimensional"
            )
        q_poly = Poly(coeffs + [Q(1)])
        solutions.append((d, q_poly))
    if not solutions:
        raise NoSolution(
            f"no monic polynomial up to degree {degree_bound} solves "
            f"Q(u) = delta(u) Q(u+1) for delta = {delta!r}"
        )
    if len(solutions) > 1:
        raise AmbiguousSolution(
            f"multiple degrees admit solutions: {[d for d, _ in solutions]}"
        )
    _, q_poly = solutions[0]
    roots, remainder = q_poly.rational_roots()
    if remainder.degree > 0:
        raise NoSolution(
            "Q-function has a non-rational factor; not a string solution"
        )
    return QFunction(tuple(sorted(roots, reverse=True)))


def _solve_affine(mat, rhs):
    """Solve mat*x = rhs exactly.  Returns (particular solution, nullity)
    or None when inconsistent.  Free variables are set to zero."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    aug = [list(mat[i]) + [rhs[i]] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if aug[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = Q(1) / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                factor = aug[i][c]
                aug[i] = [x - factor * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if aug[i][cols] != 0:
            return None
    x = [Q(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = aug[i][cols]
    return x, cols - len(pivots)


class SingularRootObstruction(Exception):
    """A root coinciding with an inhomogeneity did not produce a removable
    clearing zero; the string prescription fails here."""


def bethe_vector(
    spec: MonodromySpec, roots: Sequence[Fraction]
) -> StateVector:
    """Successive cleared creation operators B~(u_k) = P_12(u_k) on |Omega>.

    Generic roots are plain polynomial evaluations.  A root coinciding
    with an inhomogeneity needs care: the *value* of the cleared operator
    there is the residue operator, which annihilates the product (the
    underlying singularity is removable), so the vector is obtained by
    applying B~(u) formally, deflating the clearing zero (u - root)
    exactly, and evaluating the quotient.  This is the exact-arithmetic
    counterpart of the regularization used for three-vertex invariants;
    non-divisibility raises SingularRootObstruction.  B-operators commute,
    so processing singular roots last is harmless.
    """
    if spec.n != 2:
        raise ValueError("Bethe vectors are constructed for gl(2) only")
    vs = [s.v for s in spec.sites]
    roots = [Q(r) for r in roots]
    ordered = [r for r in roots if r not in vs] + [r for r in roots if r in vs]
    vec = tensor_highest_weight(spec.reps())
    for root in ordered:
        mult = sum(1 for v in vs if v == root)
        if mult == 0:
            vec = monodromy_element(spec, 1, 2, vec, root)
            continue
        formal = monodromy_element(spec, 1, 2, vec, Poly.x())
        divisor = Poly.from_roots([root] * mult)
        terms = {}
        for key, coeff in formal.terms.items():
            if isinstance(coeff, (int, Fraction)):
                coeff = Poly.const(coeff)
            quot, rem = coeff.divmod(divisor)
            if not rem.is_zero():
                raise SingularRootObstruction(
                    f"clearing zero at root {root} is not removable"
                )
            value = quot(root)
            if value != 0:
                terms[key] = value
        vec = StateVector(vec.sites, terms)
    return vec


def bethe_vector_uncleared(
    spec: MonodromySpec, roots: Sequence[Fraction]
) -> StateVector:
    """The same vector divided by prod_k prod_i (u_k - v_i): the
    divergence-prone normalization built from uncleared creation operators;
    requires all roots off the inhomogeneities."""
    vec = bethe_vector(spec, roots)
    scale = Q(1)
    for root in roots:
        factor = spec.clearing_factor(Q(root))
        if factor == 0:
            raise ZeroDivisionError(
                f"root {root} coincides with an inhomogeneity; "
                "only the cleared vector exists"
            )
        scale *= factor
    return vec * (Q(1) / scale)


def singular_roots(spec: MonodromySpec, roots: Sequence[Fraction]):
    """Roots coinciding with an inhomogeneity (three-vertex situations)."""
    vs = {s.v for s in spec.sites}
    return tuple(r for r in roots if Q(r) in vs)


def check_bethe_equations(
    ev: VacuumEigenvalues, roots: Sequence[Fraction]
) -> CheckReport:
    """Evaluate alpha(u_k)Q(u_k-1) and delta(u_k)Q(u_k+1) at every root.

    Reports whether the degenerate condition (both terms vanish) or only
    the summed Bethe equation holds; regularity violations (a pole of
    alpha or delta at a root) are reported, never skipped.
    """
    report = CheckReport("bethe-equations")
    q = QFunction(tuple(roots))
    degenerate = True
    summed = True
    for k, root in enumerate(roots):
        u = Q(root)
        av, dv = _eval_safe(ev.alpha, u), _eval_safe(ev.delta, u)
        if av is None or dv is None:
            report.fail(f"regularity violation: alpha/delta pole at root {u}")
            degenerate = summed = False
            continue
        t1 = av * q(u - 1)
        t2 = dv * q(u + 1)
        if t1 != 0 or t2 != 0:
            degenerate = False
        if t1 + t2 != 0:
            summed = False
            report.fail(f"root {u}: Bethe equation violated (sum {t1 + t2})")
    report.details["degenerate"] = degenerate
    report.details["summed"] = summed
    return report


@dataclass(frozen=True)
class WaveFunctionInput:
    """Inhomogeneities w (length L), Bethe roots u (length P), strictly
    increasing magnon positions x in 1..L."""

    w: Tuple[Fraction, ...]
    u: Tuple[Fraction, ...]
    x: Tuple[int, ...]

    def __post_init__(self):
        L, P = len(self.w), len(self.u)
        if len(self.x) != P:
            raise ValueError("need one position per Bethe root")
        if any(not 1 <= xi <= L for xi in self.x):
            raise ValueError("positions must lie in 1..L")
        if any(a >= b for a, b in zip(self.x, self.x[1:])):
            raise ValueError("positions must be strictly increasing")


def wave_function(inp: WaveFunctionInput) -> Fraction:
    """Inhomogeneous coordinate Bethe wave function.

        Phi(w, u, x) = sum_rho A(u_rho) prod_k phi_{x_k}(u_rho(k), w)

    with A = prod_{k<l} (u_k - u_l + 1)/(u_k - u_l) on the permuted roots
    and phi_x(u, w) = prod_{j<x} (u - w_j + 1) prod_{j>x} (u - w_j).
    Symmetric under permutations of the roots.
    """
    P = len(inp.u)
    L = len(inp.w)
    for a, b in itertools.combinations(range(P), 2):
        if inp.u[a] == inp.u[b]:
            raise CoincidentRoots(f"roots {inp.u[a]} and {inp.u[b]} coincide")
    total = Q(0)
    for perm in itertools.permutations(range(P)):
        roots = [inp.u[p] for p in perm]
        amp = Q(1)
        for k in range(P):
            for l in range(k + 1, P):
                amp *= (roots[k] - roots[l] + 1) / (roots[k] - roots[l])
        for k, xk in enumerate(inp.x):
            u = roots[k]
            for j in range(1, xk):
                amp *= u - inp.w[j - 1] + 1
            for j in range(xk + 1, L + 1):
                amp *= u - inp.w[j - 1]
        total += amp
    return total


def superpose(
    a: VacuumEigenvalues, qa: QFunction, b: VacuumEigenvalues, qb: QFunction
):
    """Pointwise product of two functional-relation solutions is again one."""
    mus = tuple(x * y for x, y in zip(a.mu, b.mu))
    return VacuumEigenvalues(mus), QFunction(tuple(qa.roots + qb.roots))


# --- the two-site combinatorial identity -------------------------------------


def insertion_coefficient(s: int, positions: Sequence[int]) -> Fraction:
    """prod_{k=1..m} (2 j_k - s + m - k) / m! for insertion slots j_1<...<j_m."""
    m = len(positions)
    out = Q(1, factorial(m))
    for k, j in enumerate(positions, start=1):
        out *= 2 * j - s + m - k
    return out


def curious_identity_coefficients(s: int) -> List[Fraction]:
    """Brute-force enumeration of all ordered insertion patterns: the
    coefficient of the mixed monomial with m flavor-2 factors."""
    out = []
    for m in range(s + 1):
        total = Q(0)
        for positions in itertools.combinations(range(1, s + 1), m):
            total += insertion_coefficient(s, positions)
        out.append(total)
    return out


def appendix_two_site_identity(s: int) -> CheckReport:
    """Check the insertion-sum identity against binomial(s, m) and the full
    operator product B(u_1)...B(u_s)|Omega> = (-1)^s (bdag.adag)^s |0>
    in the uncleared normalization."""
    from .invariants import build_invariant, monodromy_of, two_one

    report = CheckReport("two-site-identity")
    coeffs = curious_identity_coefficients(s)
    for m, val in enumerate(coeffs):
        if val != comb(s, m):
            report.fail(f"s={s}, m={m}: insertion sum {val} != C(s,m)")
    spec = two_one(2, s, v2=Q(0))
    mono = monodromy_of(spec)
    roots = [Q(-k) for k in range(1, s + 1)]  # u_k = v2 - k with v2 = 0
    if s > 0:
        vec = bethe_vector_uncleared(mono, roots)
        target = build_invariant(spec) * Q((-1) ** s)
        if vec != target:
            report.fail(f"s={s}: operator product != (-1)^s (bdag.adag)^s|0>")
    report.details["coefficients"] = [str(c) for c in coeffs]
    return report
