"""Job descriptions, the verification dispatcher, and canonical reports.

Jobs are pydantic models; rationals travel as "p/q" strings so no float
ever enters the exact pipeline.  Reports are canonical YAML with sorted
keys and a schema version; byte-identical for identical inputs (timing is
carried separately and excluded from golden serialization).
"""

from __future__ import annotations

import time
from fractions import Fraction
from typing import Dict, List, Literal, Optional, Union

import yaml
from pydantic import BaseModel, Field, field_validator

from . import __version__
from .bethe import (
    check_functional_relations_gl2,
    check_functional_relations_gln,
    bethe_vector,
    singular_roots,
    solve_q,
    vacuum_eigenvalues,
)
from .fock import RepKind, RepLabel, projective_ratio
from .invariants import (
    ConstraintViolation,
    Family,
    InvariantSpec,
    build_invariant,
    grassmannian_eval,
    monodromy_of,
)
from .lattice import (
    BaxterLattice,
    contract_partition_function,
    ice_rule_satisfied,
    perimeter_bethe_z,
)
from .monodromy import MonodromySpec, SiteSpec, check_invariance
from .rational import Q

SCHEMA_VERSION = 1


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


_RATIONAL_DOC = 'exact rational as "p/q" or "p"'


class VerifyInvariantJob(BaseModel):
    """Build a closed-form invariant and certify Yangian invariance."""

    kind: Literal["verify-invariant"] = "verify-invariant"
    family: Literal["TwoOne", "ThreeOne", "ThreeTwo", "FourTwo"]
    n: int = 2
    s: List[int] = Field(description="family s-parameters")
    base_v: str = Field(default="0/1", description=_RATIONAL_DOC)
    z: Optional[str] = Field(default=None, description=_RATIONAL_DOC)
    samples: Optional[int] = None

    @field_validator("base_v", "z")
    @classmethod
    def _rational(cls, v):
        if v is not None:
            parse_rational(v)
        return v


class BetheReconstructJob(BaseModel):
    """Solve the functional relations, rebuild the invariant as a Bethe
    vector and compare projectively with the closed form."""

    kind: Literal["bethe-reconstruct"] = "bethe-reconstruct"
    family: Literal["TwoOne", "ThreeOne", "ThreeTwo", "FourTwo"]
    n: int = 2
    s: List[int] = Field(description="family s-parameters")
    base_v: str = "0/1"
    z: Optional[str] = None
    max_degree: int = 12

    @field_validator("base_v", "z")
    @classmethod
    def _rational(cls, v):
        if v is not None:
            parse_rational(v)
        return v


class LatticeLine(BaseModel):
    i: int
    j: int
    rep: Literal["conjugate", "symmetric"] = "conjugate"
    s: int = 1
    theta: str = "0/1"

    @field_validator("theta")
    @classmethod
    def _rational(cls, v):
        parse_rational(v)
        return v


class LatticeZJob(BaseModel):
    """Contract a Baxter lattice; spin-1/2 lattices are cross-checked
    against the perimeter closed form."""

    kind: Literal["lattice-z"] = "lattice-z"
    n: int = 2
    lines: List[LatticeLine]
    alpha: List[Union[int, List[int]]]


class FunctionalRelationsJob(BaseModel):
    """gl(n) functional relations for the two-site single-line monodromy,
    with Q-functions solved level by level; n=2 cross-checks the gl(2)
    form."""

    kind: Literal["functional-relations"] = "functional-relations"
    n: int = 2
    s: int = 1
    base_v: str = "0/1"
    max_degree: int = 12

    @field_validator("base_v")
    @classmethod
    def _rational(cls, v):
        parse_rational(v)
        return v


class FullSuiteJob(BaseModel):
    """A bundled battery over the standard sample grid."""

    kind: Literal["full-suite"] = "full-suite"
    max_s: int = 2


JobDescription = Union[
    VerifyInvariantJob,
    BetheReconstructJob,
    LatticeZJob,
    FunctionalRelationsJob,
    FullSuiteJob,
]

_JOB_TYPES = {
    "verify-invariant": VerifyInvariantJob,
    "bethe-reconstruct": BetheReconstructJob,
    "lattice-z": LatticeZJob,
    "functional-relations": FunctionalRelationsJob,
    "full-suite": FullSuiteJob,
}


class Verdict(BaseModel):
    check: str
    passed: bool
    witness: str = ""


class Report(BaseModel):
    schema_version: int = SCHEMA_VERSION
    artifact: str = "yanginv"
    version: str = __version__
    job: Dict
    passed: bool
    verdicts: List[Verdict]
    metrics: Dict[str, str] = Field(default_factory=dict)
    timing_ms: Optional[float] = None


def parse_job(data: Dict) -> JobDescription:
    kind = data.get("kind")
    if kind not in _JOB_TYPES:
        raise ValueError(f"unknown job kind {kind!r}")
    return _JOB_TYPES[kind].model_validate(data)


def load_job(path: str) -> JobDescription:
    with open(path, "r", encoding="utf-8") as handle:
        data = yaml.safe_load(handle)
    if not isinstance(data, dict):
        raise ValueError("job file must hold a mapping")
    return parse_job(data)


def serialize_job(job: JobDescription) -> str:
    return yaml.safe_dump(
        job.model_dump(exclude_none=True), sort_keys=True,
        default_flow_style=False,
    )


def _invariant_spec(family: str, n: int, s: List[int], base_v: str, z) -> InvariantSpec:
    fam = Family(family)
    zval = parse_rational(z) if z is not None else None
    return InvariantSpec(fam, n, tuple(s), parse_rational(base_v), zval)


def _verdict(name: str, report) -> Verdict:
    witness = "; ".join(report.failures[:3])
    return Verdict(check=name, passed=report.passed, witness=witness)


def run_job(job: JobDescription) -> Report:
    """Dispatch and collect a deterministic report."""
    started = time.perf_counter()
    verdicts: List[Verdict] = []
    metrics: Dict[str, str] = {}
    try:
        if isinstance(job, VerifyInvariantJob):
            _run_verify(job, verdicts, metrics)
        elif isinstance(job, BetheReconstructJob):
            _run_bethe(job, verdicts, metrics)
        elif isinstance(job, LatticeZJob):
            _run_lattice(job, verdicts, metrics)
        elif isinstance(job, FunctionalRelationsJob):
            _run_relations(job, verdicts, metrics)
        else:
            _run_suite(job, verdicts, metrics)
    except (ConstraintViolation, ValueError) as exc:
        verdicts.append(Verdict(check="setup", passed=False, witness=str(exc)))
    elapsed = (time.perf_counter() - started) * 1000.0
    return Report(
        job=job.model_dump(exclude_none=True),
        passed=all(v.passed for v in verdicts),
        verdicts=verdicts,
        metrics=metrics,
        timing_ms=elapsed,
    )


def _run_verify(job: VerifyInvariantJob, verdicts, metrics):
    spec = _invariant_spec(job.family, job.n, job.s, job.base_v, job.z)
    mono = monodromy_of(spec)
    psi = build_invariant(spec)
    samples = None
    if job.samples:
        from .monodromy import default_samples

        samples = default_samples(mono, max(job.samples, mono.length + 1))
    inv = check_invariance(mono, psi, samples)
    verdicts.append(_verdict("yangian-invariance", inv))
    verdicts.append(
        Verdict(
            check="transfer-eigenvalue-n",
            passed=inv.passed,
            witness="" if inv.passed else "see invariance failures",
        )
    )
    gr = grassmannian_eval(spec)
    ratio = projective_ratio(gr, psi)
    ok = ratio is not None and ratio != 0
    verdicts.append(
        Verdict(
            check="grassmannian-projective-match",
            passed=ok,
            witness="" if ok else "extraction not proportional",
        )
    )
    if ok:
        metrics["grassmannian_ratio"] = format_rational(ratio)
    metrics["terms"] = str(len(psi.terms))


def _run_bethe(job: BetheReconstructJob, verdicts, metrics):
    if job.n != 2:
        raise ConstraintViolation("Bethe reconstruction is gl(2) only")
    spec = _invariant_spec(job.family, job.n, job.s, job.base_v, job.z)
    mono = monodromy_of(spec)
    ev = vacuum_eigenvalues(mono)
    q = solve_q(ev.delta, job.max_degree)
    metrics["bethe_roots"] = ", ".join(format_rational(r) for r in q.roots)
    fr = check_functional_relations_gl2(ev, q)
    verdicts.append(_verdict("functional-relations", fr))
    vec = bethe_vector(mono, q.roots)
    psi = build_invariant(spec)
    ratio = projective_ratio(vec, psi)
    ok = ratio is not None and ratio != 0
    verdicts.append(
        Verdict(
            check="bethe-vector-projective-match",
            passed=ok,
            witness="" if ok else "Bethe vector not proportional",
        )
    )
    if ok:
        metrics["projective_ratio"] = format_rational(ratio)
    sing = singular_roots(mono, q.roots)
    metrics["singular_roots"] = ", ".join(format_rational(r) for r in sing)


def _lattice_from_job(job: LatticeZJob) -> BaxterLattice:
    pairs, reps, thetas = [], [], []
    for line in job.lines:
        pairs.append((line.i, line.j))
        kind = (
            RepKind.CONJUGATE if line.rep == "conjugate" else RepKind.SYMMETRIC
        )
        reps.append(RepLabel(kind, line.s, job.n))
        thetas.append(parse_rational(line.theta))
    return BaxterLattice(tuple(pairs), tuple(reps), tuple(thetas))


def _run_lattice(job: LatticeZJob, verdicts, metrics):
    lat = _lattice_from_job(job)
    alpha = [a if isinstance(a, int) else tuple(a) for a in job.alpha]
    z = contract_partition_function(lat, alpha)
    metrics["Z"] = format_rational(z)
    metrics["ice_rule"] = str(ice_rule_satisfied(lat, alpha))
    verdicts.append(Verdict(check="contraction", passed=True, witness=""))
    spin_half = all(
        r.kind is RepKind.CONJUGATE and r.s == 1 and r.n == 2 for r in lat.reps
    )
    if spin_half:
        zp = perimeter_bethe_z(lat, alpha)
        agree = zp == z
        verdicts.append(
            Verdict(
                check="perimeter-formula-match",
                passed=agree,
                witness="" if agree else f"perimeter {zp} vs contraction {z}",
            )
        )


def _single_line_spec(n: int, s: int, base_v: Fraction) -> MonodromySpec:
    """Two sites from one conjugate-representation line."""
    return MonodromySpec(
        n,
        (
            SiteSpec(RepLabel(RepKind.CONJUGATE, s, n), base_v),
            SiteSpec(RepLabel(RepKind.SYMMETRIC, s, n), base_v + s + n - 1),
        ),
    )


def _run_relations(job: FunctionalRelationsJob, verdicts, metrics):
    base_v = parse_rational(job.base_v)
    spec = _single_line_spec(job.n, job.s, base_v)
    ev = vacuum_eigenvalues(spec)
    qs = []
    for level in range(1, job.n):
        # separated equation: Q_k(u)/Q_k(u+1) = prod_{a>k} mu_a(u-a+k+1)
        rhs = None
        for a in range(level + 1, job.n + 1):
            factor = ev.mu[a - 1].shift(Q(-a + level + 1))
            rhs = factor if rhs is None else rhs * factor
        qs.append(solve_q(rhs, job.max_degree))
    gln = check_functional_relations_gln(ev.mu, qs)
    verdicts.append(_verdict("functional-relations-gln", gln))
    for level, q in enumerate(qs, start=1):
        metrics[f"roots_level_{level}"] = ", ".join(
            format_rational(r) for r in q.roots
        )
    if job.n == 2:
        gl2 = check_functional_relations_gl2(ev, qs[0])
        agree = gl2.passed == gln.passed
        verdicts.append(
            Verdict(
                check="gl2-reduction-agrees",
                passed=agree,
                witness="" if agree else "gl(2) and gl(n) checkers disagree",
            )
        )


def _run_suite(job: FullSuiteJob, verdicts, metrics):
    smax = job.max_s
    for family, params in (
        ("TwoOne", [[s] for s in range(1, smax + 1)]),
        ("ThreeOne", [[1, 1], [smax, 1]]),
        ("ThreeTwo", [[1, 1], [1, smax]]),
    ):
        for s in params:
            sub = VerifyInvariantJob(family=family, n=2, s=s)
            rep = run_job(sub)
            verdicts.append(
                Verdict(
                    check=f"verify/{family}/s={s}",
                    passed=rep.passed,
                    witness="" if rep.passed else "see sub-report",
                )
            )
    for z in ("5/2", "7/3", "-9/4"):
        sub = VerifyInvariantJob(family="FourTwo", n=2, s=[1, 1], z=z)
        rep = run_job(sub)
        verdicts.append(
            Verdict(
                check=f"verify/FourTwo/z={z}",
                passed=rep.passed,
                witness="",
            )
        )
    for family, s in (("TwoOne", [2]), ("FourTwo", [1, 1])):
        sub = BetheReconstructJob(
            family=family, n=2, s=s, z="5/2" if family == "FourTwo" else None
        )
        rep = run_job(sub)
        verdicts.append(
            Verdict(
                check=f"bethe/{family}",
                passed=rep.passed,
                witness="",
            )
        )
    rel = run_job(FunctionalRelationsJob(n=3, s=smax))
    verdicts.append(
        Verdict(check="relations/gl3", passed=rel.passed, witness="")
    )


def canonical_report_text(report: Report, include_timing: bool = False) -> str:
    data = report.model_dump(exclude_none=True)
    if not include_timing:
        data.pop("timing_ms", None)
    return yaml.safe_dump(data, sort_keys=True, default_flow_style=False)


def emit_golden(job: JobDescription, path: str) -> Report:
    """Run the job and write the canonical (timing-free) report."""
    report = run_job(job)
    text = canonical_report_text(report, include_timing=False)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)
    return report
