"""Finite-dimensional gl(n) oscillator representations and state vectors.

Two representation types occur: the totally symmetric one with highest
weight (s,0,...,0), realized by n creation/annihilation pairs with
generators J_ab = adag_a a_b, and its conjugate with highest weight
(0,...,0,-s) and generators Jbar_ab = -bdag_b b_a.  Basis elements are
occupation tuples m = (m_1,...,m_n) with sum(m) = s, i.e. unnormalized
monomials in the creation operators acting on the Fock vacuum.

State vectors are sparse rational linear combinations of tensor products
of such monomials.  Coefficients are usually Fractions but any commutative
coefficient domain works (rational functions of a deformation parameter,
polynomials in the spectral parameter).

All components, matrix elements and pairings are monomial-basis
coefficients.  The monomial basis is orthogonal with norm^2 = prod(m_a!);
``pairing`` divides by that norm^2, so pairing(m, monomial m with unit
coefficient) = 1 and the stated basis behaves as an orthonormal one while
everything stays in Q.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterator, Tuple

FockState = Tuple[int, ...]


class RepKind(Enum):
    SYMMETRIC = "symmetric"
    CONJUGATE = "conjugate"


@dataclass(frozen=True)
class RepLabel:
    """One oscillator representation: kind, magnitude s and rank n."""

    kind: RepKind
    s: int
    n: int

    def __post_init__(self):
        if self.s < 0:
            raise ValueError("s must be a non-negative integer")
        if self.n < 2:
            raise ValueError("rank n must be >= 2")

    @property
    def dimension(self) -> int:
        return comb(self.s + self.n - 1, self.n - 1)

    def conjugate(self) -> "RepLabel":
        kind = (
            RepKind.CONJUGATE
            if self.kind is RepKind.SYMMETRIC
            else RepKind.SYMMETRIC
        )
        return RepLabel(kind, self.s, self.n)


def symmetric(s: int, n: int) -> RepLabel:
    return RepLabel(RepKind.SYMMETRIC, s, n)


def conjugate(s: int, n: int) -> RepLabel:
    return RepLabel(RepKind.CONJUGATE, s, n)


def basis_states(rep: RepLabel) -> Iterator[FockState]:
    """All occupation tuples of the representation, lexicographic order."""
    yield from _compositions(rep.s, rep.n)


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def norm_sq(state: FockState) -> int:
    """Monomial norm^2: <m|m> = prod_a m_a!."""
    out = 1
    for m in state:
        out *= factorial(m)
    return out


class OccupancyMismatch(Exception):
    """A Fock state does not match its site's representation."""


class StateVector:
    """Sparse vector over tensor products of Fock monomials.

    ``terms`` maps tuples of FockStates (one per site) to coefficients.
    Zero coefficients are never stored; the zero vector has no terms.
    Instances are treated as immutable values.
    """

    __slots__ = ("sites", "terms")

    def __init__(self, sites: Tuple[RepLabel, ...], terms: Dict = None):
        self.sites = tuple(sites)
        clean = {}
        if terms:
            for key, coeff in terms.items():
                if _zero(coeff):
                    continue
                clean[key] = coeff
        self.terms = clean

    @staticmethod
    def zero(sites) -> "StateVector":
        return StateVector(tuple(sites), {})

    @staticmethod
    def monomial(sites, key, coeff=Fraction(1)) -> "StateVector":
        sv = StateVector(tuple(sites), {tuple(key): coeff})
        sv.validate()
        return sv

    def validate(self):
        for key in self.terms:
            if len(key) != len(self.sites):
                raise OccupancyMismatch("key length does not match sites")
            for state, rep in zip(key, self.sites):
                if len(state) != rep.n or any(m < 0 for m in state):
                    raise OccupancyMismatch(f"bad occupations {state}")
                if sum(state) != rep.s:
                    raise OccupancyMismatch(
                        f"occupations {state} do not sum to s={rep.s}"
                    )

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "StateVector") -> "StateVector":
        if self.sites != other.sites:
            raise OccupancyMismatch("adding vectors over different sites")
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            if key in out:
                out[key] = out[key] + coeff
            else:
                out[key] = coeff
        return StateVector(self.sites, out)

    def __sub__(self, other: "StateVector") -> "StateVector":
        return self + (-1) * other

    def __mul__(self, scalar) -> "StateVector":
        if _zero(scalar):
            return StateVector.zero(self.sites)
        return StateVector(
            self.sites, {k: c * scalar for k, c in self.terms.items()}
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, StateVector):
            return NotImplemented
        return self.sites == other.sites and self.terms == other.terms

    def __hash__(self):
        return hash((self.sites, frozenset(self.terms.items())))

    def map_coefficients(self, fn) -> "StateVector":
        return StateVector(self.sites, {k: fn(c) for k, c in self.terms.items()})

    def coefficient(self, key):
        return self.terms.get(tuple(key), Fraction(0))

    def __repr__(self):
        if not self.terms:
            return "StateVector(0)"
        items = sorted(self.terms.items())[:6]
        body = " + ".join(f"{c}*|{k}>" for k, c in items)
        more = "" if len(self.terms) <= 6 else f" + ... ({len(self.terms)} terms)"
        return f"StateVector({body}{more})"


def _zero(coeff) -> bool:
    if isinstance(coeff, (int, Fraction)):
        return coeff == 0
    probe = getattr(coeff, "is_zero", None)
    if callable(probe):
        return probe()
    return False


def apply_generator(v: StateVector, site: int, a: int, b: int) -> StateVector:
    """Apply the gl(n) generator J_ab (or Jbar_ab) at one site.

    Indices a, b run 1..n.  Symmetric sites: J_ab = adag_a a_b, so the
    monomial (m) picks up a factor m_b and occupation moves b -> a.
    Conjugate sites: Jbar_ab = -bdag_b b_a, factor -m_a, move a -> b.
    Annihilation of every term yields the zero vector.
    """
    rep = v.sites[site]
    a0, b0 = a - 1, b - 1
    out: Dict = {}
    for key, coeff in v.terms.items():
        state = key[site]
        if rep.kind is RepKind.SYMMETRIC:
            factor = state[b0]
            if factor == 0:
                continue
            new_state = list(state)
            new_state[b0] -= 1
            new_state[a0] += 1
        else:
            factor = -state[a0]
            if factor == 0:
                continue
            new_state = list(state)
            new_state[a0] -= 1
            new_state[b0] += 1
        new_key = key[:site] + (tuple(new_state),) + key[site + 1 :]
        add = coeff * factor
        if new_key in out:
            out[new_key] = out[new_key] + add
        else:
            out[new_key] = add
    return StateVector(v.sites, out)


def highest_weight_state(rep: RepLabel) -> StateVector:
    """(adag_1)^s |0> for symmetric reps, (bdag_n)^s |0> for conjugate ones."""
    occ = [0] * rep.n
    slot = 0 if rep.kind is RepKind.SYMMETRIC else rep.n - 1
    occ[slot] = rep.s
    return StateVector.monomial((rep,), (tuple(occ),))


def tensor_highest_weight(sites) -> StateVector:
    """Tensor product of per-site highest weight states."""
    sites = tuple(sites)
    key = []
    for rep in sites:
        occ = [0] * rep.n
        slot = 0 if rep.kind is RepKind.SYMMETRIC else rep.n - 1
        occ[slot] = rep.s
        key.append(tuple(occ))
    return StateVector.monomial(sites, tuple(key))


def pairing(bra, v: StateVector):
    """Component <bra|v> / norm^2(bra): the monomial-basis coefficient.

    With this normalization the stated basis states are orthonormal
    (pairing of a monomial against itself with unit coefficient is 1)
    and the result stays rational.
    """
    key = tuple(tuple(s) for s in bra)
    if len(key) != len(v.sites):
        raise OccupancyMismatch("bra arity does not match vector sites")
    for state, rep in zip(key, v.sites):
        if len(state) != rep.n or sum(state) != rep.s:
            raise OccupancyMismatch(f"bra state {state} incompatible with {rep}")
    return v.terms.get(key, Fraction(0))


def chain_basis(sites) -> Iterator[Tuple[FockState, ...]]:
    """All tensor-product basis keys of a site sequence."""
    pools = [list(basis_states(rep)) for rep in sites]
    for combo in itertools.product(*pools):
        yield tuple(combo)


def projective_ratio(v: StateVector, w: StateVector):
    """The single scalar r with v = r*w, or None if no such scalar exists.

    Both vectors must share sites.  The zero vector is proportional to
    anything with ratio 0 (if v is zero) and None is returned when only w
    is zero but v is not.
    """
    if v.sites != w.sites:
        return None
    if v.is_zero():
        return Fraction(0)
    if w.is_zero():
        return None
    key = next(iter(sorted(w.terms)))
    if key not in v.terms:
        return None
    ratio = v.terms[key] / w.terms[key]
    scaled = w * ratio
    if scaled == v:
        return ratio
    return None
