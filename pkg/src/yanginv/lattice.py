"""Baxter lattices: planar line arrangements, exact vertex-model
contraction, the perimeter closed form, Z-invariance moves, and the
identification of lattice partition functions with invariant vectors.

A lattice is N chords of a disk.  Endpoints are labeled 1..2N
counterclockwise; line k runs from endpoint j_k to endpoint i_k
(i_k < j_k) and carries a representation and a rapidity.  Two lines
cross iff their endpoints interleave.  The vertex order along each line
is derived from G alone through a deterministic exact-rational convex
embedding (no floats); any consistent planar realization yields the same
partition function, which z_invariance_check verifies explicitly.

Vertex weights, by line content:
  * spin-1/2 (n=2 conjugate s=1 lines): the exact rational six-vertex
    R-matrix, normalized so that the all-ones boundary gives Z = 1;
  * general conjugate pairs: the coefficient matrix of the four-site
    invariant at z = theta_k - theta_l + s_k - s_l (the R-matrix the
    intertwiner construction produces), projectively normalized;
  * symmetric pairs: the hopping R-matrix with e_0 = 1.

All weights are monomial-coefficient matrices; boundary sums and the
assembled invariant vector carry the exact norm bookkeeping described in
``invariant_from_lattice``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .fock import (
    RepKind,
    RepLabel,
    StateVector,
    basis_states,
    norm_sq,
)
from .invariants import four_two, build_invariant
from .lax import CheckReport, PoleError, crossing_parameter, hopping_rmatrix
from .monodromy import MonodromySpec, SiteSpec
from .rational import Q


class InvalidLattice(Exception):
    pass


class UnsupportedRepresentation(Exception):
    """No vertex-weight rule for this pair of line representations."""


@dataclass(frozen=True)
class BaxterLattice:
    """Endpoint pairs G, per-line representations and rapidities."""

    pairs: Tuple[Tuple[int, int], ...]
    reps: Tuple[RepLabel, ...]
    thetas: Tuple[Fraction, ...]

    def __post_init__(self):
        N = len(self.pairs)
        if len(self.reps) != N or len(self.thetas) != N:
            raise InvalidLattice("per-line data lengths disagree")
        seen = set()
        for i, j in self.pairs:
            if not (1 <= i < j <= 2 * N):
                raise InvalidLattice(f"endpoint pair ({i},{j}) out of range")
            seen.update((i, j))
        if len(seen) != 2 * N:
            raise InvalidLattice("endpoints must form a perfect matching")

    @property
    def n_lines(self) -> int:
        return len(self.pairs)

    def crossing_pairs(self) -> List[Tuple[int, int]]:
        """Line index pairs (k, l), k < l, whose endpoints interleave."""
        out = []
        for k in range(self.n_lines):
            ik, jk = self.pairs[k]
            for l in range(k + 1, self.n_lines):
                il, jl = self.pairs[l]
                inside = sum(1 for e in (il, jl) if ik < e < jk)
                if inside == 1:
                    out.append((k, l))
        return out


def spin_half_lattice(pairs, thetas) -> BaxterLattice:
    """All lines carry the gl(2) antifundamental (conjugate s=1)."""
    N = len(pairs)
    return BaxterLattice(
        tuple(tuple(p) for p in pairs),
        tuple(RepLabel(RepKind.CONJUGATE, 1, 2) for _ in range(N)),
        tuple(Q(t) for t in thetas),
    )


# --- planar realization -------------------------------------------------------


def _circle_point(t: Fraction) -> Tuple[Fraction, Fraction]:
    """Rational point on the unit circle; the parametrization sweeps the
    circle counterclockwise as t increases."""
    d = 1 + t * t
    return ((1 - t * t) / d, 2 * t / d)


def _vertex_orders(lat: BaxterLattice, seed: int = 0):
    """For each line, the crossing lines ordered along the travel
    direction (from j_k towards i_k), derived from an exact convex
    embedding.  ``seed`` selects an alternative (equally valid) embedding.
    """
    N = lat.n_lines
    params: Dict[int, List[Tuple[Fraction, int]]] = {k: [] for k in range(N)}
    for attempt in range(3):
        pts = {}
        for m in range(1, 2 * N + 1):
            t = Q(m - N) + Q(seed + attempt, 2 * N + 3) + Q(1, 7) * (
                Q(seed + attempt) / (m + 1)
            )
            pts[m] = _circle_point(t)
        ok = True
        params = {k: [] for k in range(N)}
        for k, l in lat.crossing_pairs():
            ik, jk = lat.pairs[k]
            il, jl = lat.pairs[l]
            s_k, s_l = _segment_intersection(
                pts[jk], pts[ik], pts[jl], pts[il]
            )
            params[k].append((s_k, l))
            params[l].append((s_l, k))
        for k in range(N):
            svals = [s for s, _ in params[k]]
            if len(set(svals)) != len(svals):
                ok = False
                break
        if ok:
            return {
                k: [line for _, line in sorted(entries)]
                for k, entries in params.items()
            }
    raise InvalidLattice("degenerate embedding; tried several placements")


def _segment_intersection(a0, a1, b0, b1):
    """Parameters (s, t) with a0 + s*(a1-a0) = b0 + t*(b1-b0), exact."""
    ax, ay = a1[0] - a0[0], a1[1] - a0[1]
    bx, by = b1[0] - b0[0], b1[1] - b0[1]
    det = ax * (-by) - (-bx) * ay
    if det == 0:
        raise InvalidLattice("parallel chords in embedding")
    rx, ry = b0[0] - a0[0], b0[1] - a0[1]
    s = (rx * (-by) - (-bx) * ry) / det
    t = (ax * ry - rx * ay) / det
    return s, t


# --- vertex weights -----------------------------------------------------------


def _six_vertex_weight_matrix(u: Fraction) -> Dict:
    """Exact spin-1/2 weights: elements of (u*Id + P) / (u + 1), keyed by
    occupation tuples, in the ((out_k, out_l), (in_k, in_l)) convention."""
    if u + 1 == 0:
        raise PoleError(f"six-vertex weight pole at rapidity difference {u}")
    states = ((1, 0), (0, 1))
    mat: Dict = {}
    for a in states:
        for b in states:
            for c in states:
                for d in states:
                    val = Q(0)
                    if a == c and b == d:
                        val += u
                    if a == d and b == c:
                        val += 1
                    if val:
                        mat[((a, b), (c, d))] = val / (u + 1)
    return mat


def _conjugate_pair_weight_matrix(
    rep_k: RepLabel, rep_l: RepLabel, u: Fraction
) -> Dict:
    """Crossing weights for two conjugate-representation lines.

    The weight matrix is the coefficient matrix of the four-site invariant
    with (s3, s4) = (s_k, s_l) at z = u + s_k - s_l (u = theta_k - theta_l):
    rows (out_k, out_l) are the conjugate-site states, columns (in_k, in_l)
    the symmetric-site states read through the occupation relabeling.
    """
    z = u + rep_k.s - rep_l.s
    spec = four_two(rep_k.n, rep_k.s, rep_l.s, z)
    psi = build_invariant(spec)
    mat: Dict = {}
    for key, coeff in psi.terms.items():
        m1, m2, m3, m4 = key
        mat[((m1, m2), (m3, m4))] = coeff * norm_sq(m3) * norm_sq(m4)
    return mat


def _symmetric_pair_weight_matrix(
    rep_k: RepLabel, rep_l: RepLabel, u: Fraction
) -> Dict:
    rmat = hopping_rmatrix(rep_k.s, rep_l.s, rep_k.n, u)
    return rmat.matrix()


def vertex_weight_matrix(
    rep_k: RepLabel, rep_l: RepLabel, u: Fraction, spin_half: bool
) -> Dict:
    if spin_half:
        return _six_vertex_weight_matrix(u)
    if rep_k.kind is RepKind.CONJUGATE and rep_l.kind is RepKind.CONJUGATE:
        return _conjugate_pair_weight_matrix(rep_k, rep_l, u)
    if rep_k.kind is RepKind.SYMMETRIC and rep_l.kind is RepKind.SYMMETRIC:
        return _symmetric_pair_weight_matrix(rep_k, rep_l, u)
    raise UnsupportedRepresentation(
        "mixed symmetric/conjugate crossings have no weight rule here"
    )


def _is_spin_half(lat: BaxterLattice) -> bool:
    return all(
        r.kind is RepKind.CONJUGATE and r.s == 1 and r.n == 2 for r in lat.reps
    )


def _line_states(rep: RepLabel):
    return list(basis_states(rep))


def normalize_boundary(lat: BaxterLattice, alpha) -> Tuple:
    """Boundary labels as occupation tuples; spin-1/2 also accepts 1/2."""
    N = lat.n_lines
    if len(alpha) != 2 * N:
        raise InvalidLattice("need one boundary label per endpoint")
    line_of = {}
    for k, (i, j) in enumerate(lat.pairs):
        line_of[i] = k
        line_of[j] = k
    out = []
    for pos in range(1, 2 * N + 1):
        rep = lat.reps[line_of[pos]]
        label = alpha[pos - 1]
        if isinstance(label, int):
            if not (rep.s == 1 and 1 <= label <= rep.n):
                raise InvalidLattice(
                    f"integer label {label} needs an s=1 line"
                )
            occ = [0] * rep.n
            occ[label - 1] = 1
            out.append(tuple(occ))
        else:
            occ = tuple(int(x) for x in label)
            if len(occ) != rep.n or sum(occ) != rep.s:
                raise InvalidLattice(f"label {label} incompatible with {rep}")
            out.append(occ)
    return tuple(out)


def ice_rule_satisfied(lat: BaxterLattice, alpha) -> bool:
    """Per-flavor conservation: the totals entering at the j-endpoints
    must equal the totals leaving at the i-endpoints."""
    alpha = normalize_boundary(lat, alpha)
    n = lat.reps[0].n
    for a in range(n):
        acc_in = sum(alpha[j - 1][a] for _, j in lat.pairs)
        acc_out = sum(alpha[i - 1][a] for i, _ in lat.pairs)
        if acc_in != acc_out:
            return False
    return True


def contract_partition_function(
    lat: BaxterLattice, alpha, vertex_orders=None
) -> Fraction:
    """Exact partition function by summation over internal edge states.

    Boundary states enter at the j-endpoints and leave at the i-endpoints;
    a vertexless line contributes 1 for equal endpoint labels and forces
    Z = 0 otherwise.  The global ice rule short-circuits to 0.
    """
    alpha = normalize_boundary(lat, alpha)
    if not ice_rule_satisfied(lat, alpha):
        return Q(0)
    N = lat.n_lines
    spin_half = _is_spin_half(lat)
    if vertex_orders is None:
        vertex_orders = _vertex_orders(lat)
    # vertexless lines
    for k in range(N):
        if not vertex_orders[k]:
            i, j = lat.pairs[k]
            if alpha[i - 1] != alpha[j - 1]:
                return Q(0)
    # edge bookkeeping: line k has edges 0..len(order) between its vertices;
    # edge 0 is the boundary state at j_k, the last one the state at i_k.
    weights: Dict[Tuple[int, int], Dict] = {}
    vertices = []
    seen = set()
    for k in range(N):
        for l in vertex_orders[k]:
            key = (min(k, l), max(k, l))
            if key not in seen:
                seen.add(key)
                vertices.append(key)
    for k, l in vertices:
        u = lat.thetas[k] - lat.thetas[l]
        weights[(k, l)] = vertex_weight_matrix(
            lat.reps[k], lat.reps[l], u, spin_half
        )

    internal_edges = []  # (line, slot) with slot in 1..len(order)-1
    for k in range(N):
        for slot in range(1, len(vertex_orders[k])):
            internal_edges.append((k, slot))
    edge_index = {e: idx for idx, e in enumerate(internal_edges)}
    states_for_line = {k: _line_states(lat.reps[k]) for k in range(N)}

    def edge_state(line, slot, assignment):
        order = vertex_orders[line]
        if slot == 0:
            j = lat.pairs[line][1]
            return alpha[j - 1]
        if slot == len(order):
            i = lat.pairs[line][0]
            return alpha[i - 1]
        return assignment[edge_index[(line, slot)]]

    total = Q(0)
    pools = [states_for_line[line] for line, _ in internal_edges]
    for assignment in itertools.product(*pools):
        value = Q(1)
        for k, l in vertices:
            slot_k = vertex_orders[k].index(l)
            slot_l = vertex_orders[l].index(k)
            in_k = edge_state(k, slot_k, assignment)
            in_l = edge_state(l, slot_l, assignment)
            out_k = edge_state(k, slot_k + 1, assignment)
            out_l = edge_state(l, slot_l + 1, assignment)
            w = weights[(k, l)].get(((out_k, out_l), (in_k, in_l)), Q(0))
            if w == 0:
                value = Q(0)
                break
            value *= w
        total += value
    return total


def perimeter_bethe_z(lat: BaxterLattice, alpha) -> Fraction:
    """Closed-form spin-1/2 partition function at half-filling:

        Z = Phi(w, u, x) * (-1)^K / Phi(w, u, x0)

    with w_{i_k} = theta_k + 1, w_{j_k} = theta_k + 2, roots u_k =
    theta_k + 1, magnon positions x from the boundary labels, K the
    number of i-endpoints labeled 2, and x0 the all-ones positions.
    """
    from .bethe import WaveFunctionInput, wave_function

    if not _is_spin_half(lat):
        raise UnsupportedRepresentation(
            "the perimeter formula covers spin-1/2 lattices only"
        )
    alpha_states = normalize_boundary(lat, alpha)
    if not ice_rule_satisfied(lat, alpha):
        return Q(0)
    N = lat.n_lines
    labels = [1 if st == (1, 0) else 2 for st in alpha_states]
    w = [Q(0)] * (2 * N)
    for k, (i, j) in enumerate(lat.pairs):
        w[i - 1] = lat.thetas[k] + 1
        w[j - 1] = lat.thetas[k] + 2
    roots = tuple(lat.thetas[k] + 1 for k in range(N))
    x = sorted(
        [i for i, _ in lat.pairs if labels[i - 1] == 1]
        + [j for _, j in lat.pairs if labels[j - 1] == 2]
    )
    x0 = sorted(i for i, _ in lat.pairs)
    kappa = sum(1 for i, _ in lat.pairs if labels[i - 1] == 2)
    phi = wave_function(WaveFunctionInput(tuple(w), roots, tuple(x)))
    norm = wave_function(WaveFunctionInput(tuple(w), roots, tuple(x0)))
    if norm == 0:
        raise PoleError("degenerate rapidities: normalization vanishes")
    return Q((-1) ** kappa) * phi / norm


def z_invariance_check(lat: BaxterLattice, alpha, move) -> CheckReport:
    """Compare contractions across a planarity-preserving move.

    move = ("reembed", seed): recompute with an alternative convex
    embedding (trivial slides).  move = ("triangle", (k, l, m)): flip the
    vertex order of a mutually crossing line triple on all three lines
    (the Yang-Baxter slide) and recontract.
    """
    report = CheckReport("z-invariance")
    base_orders = _vertex_orders(lat)
    z0 = contract_partition_function(lat, alpha, base_orders)
    kind = move[0]
    if kind == "reembed":
        alt = _vertex_orders(lat, seed=int(move[1]))
        z1 = contract_partition_function(lat, alpha, alt)
    elif kind == "triangle":
        k, l, m = move[1]
        crossings = set(lat.crossing_pairs())
        for pair in [(k, l), (k, m), (l, m)]:
            if (min(pair), max(pair)) not in crossings:
                report.fail(f"lines {pair} do not cross; not a triangle")
                return report
        alt = {key: list(val) for key, val in base_orders.items()}
        for a, others in ((k, (l, m)), (l, (k, m)), (m, (k, l))):
            pos = [alt[a].index(o) for o in others]
            if abs(pos[0] - pos[1]) != 1:
                report.fail(
                    "triangle vertices are not adjacent along line "
                    f"{a}; unsupported slide"
                )
                return report
            i0, i1 = sorted(pos)
            alt[a][i0], alt[a][i1] = alt[a][i1], alt[a][i0]
        z1 = contract_partition_function(lat, alpha, alt)
    else:
        report.fail(f"unknown move descriptor {move!r}")
        return report
    if z0 != z1:
        report.fail(f"Z changed under the move: {z0} vs {z1}")
    report.details["z"] = z0
    return report


def lattice_monodromy(lat: BaxterLattice) -> MonodromySpec:
    """Sites: rep Lambda_k at i_k with v = theta_k, conjugate rep at j_k
    with v = theta_k - kappa(Lambda_k)."""
    N = lat.n_lines
    n = lat.reps[0].n
    sites: List[Optional[SiteSpec]] = [None] * (2 * N)
    for k, (i, j) in enumerate(lat.pairs):
        rep = lat.reps[k]
        sites[i - 1] = SiteSpec(rep, lat.thetas[k])
        sites[j - 1] = SiteSpec(
            rep.conjugate(), lat.thetas[k] - crossing_parameter(rep)
        )
    return MonodromySpec(n, tuple(sites))


def invariant_from_lattice(
    lat: BaxterLattice,
) -> Tuple[MonodromySpec, StateVector]:
    """Assemble the invariant vector from all boundary partition functions.

    The monomial coefficient on a basis key is Z(alpha(key)) divided by
    prod_k norm^2(label at j_k); the division is what remains of the
    orthonormal-basis bookkeeping once the telescoping internal norms
    cancel, and keeps every component rational.
    """
    for rep in lat.reps:
        if rep.kind is not RepKind.CONJUGATE:
            raise UnsupportedRepresentation(
                "lattice-to-invariant identification needs conjugate lines"
            )
    spec = lattice_monodromy(lat)
    orders = _vertex_orders(lat)
    N = lat.n_lines
    terms: Dict = {}
    site_reps = spec.reps()
    pools = [list(basis_states(rep)) for rep in site_reps]
    for key in itertools.product(*pools):
        z = contract_partition_function(lat, list(key), orders)
        if z == 0:
            continue
        weight = Q(1)
        for _, j in lat.pairs:
            weight /= norm_sq(key[j - 1])
        terms[tuple(key)] = z * weight
    vector = StateVector(site_reps, terms)
    return spec, vector
