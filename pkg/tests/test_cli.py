"""CLI thin client: verbs, job files, exit codes, report output."""

import pathlib

import yaml

from yanginv.cli import main

GOLDEN = pathlib.Path(__file__).parent / "golden"


def test_verify_verb_writes_report(tmp_path, capsys):
    out = tmp_path / "report.yaml"
    code = main(
        [
            "verify",
            "--job",
            str(GOLDEN / "verify_two_one.job.yaml"),
            "--out",
            str(out),
        ]
    )
    assert code == 0
    data = yaml.safe_load(out.read_text())
    assert data["passed"] is True


def test_cli_output_matches_golden(tmp_path):
    out = tmp_path / "report.yaml"
    assert (
        main(
            [
                "bethe",
                "--job",
                str(GOLDEN / "bethe_four_two.job.yaml"),
                "--out",
                str(out),
            ]
        )
        == 0
    )
    assert out.read_bytes() == (GOLDEN / "bethe_four_two.report.yaml").read_bytes()


def test_lattice_verb_stdout(capsys):
    code = main(["lattice", "--job", str(GOLDEN / "lattice_six_lines.job.yaml")])
    captured = capsys.readouterr()
    assert code == 0
    assert "Z: 0/1" in captured.out


def test_verb_kind_mismatch(capsys):
    code = main(
        ["lattice", "--job", str(GOLDEN / "verify_two_one.job.yaml")]
    )
    assert code == 2
    assert "does not match verb" in capsys.readouterr().err


def test_missing_job_file(capsys):
    code = main(["verify", "--job", "/nonexistent.yaml"])
    assert code == 2


def test_failing_job_exits_nonzero(tmp_path, capsys):
    bad = tmp_path / "bad.yaml"
    bad.write_text(
        "kind: verify-invariant\nfamily: FourTwo\nn: 2\ns: [1, 1]\n"
    )  # z missing -> setup failure in the report
    code = main(["verify", "--job", str(bad)])
    assert code == 1


def test_relations_verb_with_max_degree(tmp_path):
    job = tmp_path / "rel.yaml"
    job.write_text("kind: functional-relations\nn: 3\ns: 1\n")
    out = tmp_path / "rep.yaml"
    code = main(
        [
            "relations",
            "--job",
            str(job),
            "--max-degree",
            "8",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    data = yaml.safe_load(out.read_text())
    assert data["job"]["max_degree"] == 8


def test_suite_verb(tmp_path):
    job = tmp_path / "suite.yaml"
    job.write_text("kind: full-suite\nmax_s: 1\n")
    assert main(["suite", "--job", str(job)]) == 0


def test_verify_verb_with_samples_override(tmp_path):
    out = tmp_path / "rep.yaml"
    code = main(
        [
            "verify",
            "--job",
            str(GOLDEN / "verify_two_one.job.yaml"),
            "--samples",
            "5",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    data = yaml.safe_load(out.read_text())
    assert data["job"]["samples"] == 5
