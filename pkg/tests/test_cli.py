#!/usr/bin/env python
# vim: set et ts=8 sts=4 sw=4 ai:

import json

import pytest
from click.testing import CliRunner

from crownkit import __version__
from crownkit.cli import main


@pytest.fixture
def run():
    runner = CliRunner()

    def _run(*args):
        return runner.invoke(main, list(args))

    return _run


def test_version(run):
    result = run("--version")
    assert result.exit_code == 0
    assert __version__ in result.output


def test_blocks(run):
    result = run("blocks", "--group", "Dihedral(4)")
    assert result.exit_code == 0
    assert result.output == "{1,3}{2,4}\n"


def test_blocks_all(run):
    result = run("blocks", "--group", "Cyclic(6)", "--all", "--point", "2")
    assert result.exit_code == 0
    assert len(result.output.splitlines()) == 4
    result = run(
        "blocks", "--group", "Cyclic(6)", "--all", "--exclude-trivial"
    )
    assert result.output.splitlines() == [
        "{1,4}{2,5}{3,6}",
        "{1,3,5}{2,4,6}",
    ]


def test_blocks_of_a_primitive_group(run):
    result = run("blocks", "--group", "Sym(4)")
    assert result.output == "{1}{2}{3}{4}\n"
    result = run("blocks", "--group", "Sym(4)", "--exclude-trivial")
    assert result.exit_code == 0
    assert result.output == ""


def test_blocks_from_catalog_file(run, tmpdir):
    path = tmpdir.join("square.jsonl")
    path.write(json.dumps({"name": "Dihedral(4)"}) + "\n")
    result = run("blocks", "--group", str(path))
    assert result.exit_code == 0
    assert result.output == "{1,3}{2,4}\n"


def test_blocks_input_errors(run):
    result = run("blocks", "--group", "DirectProduct(Sym(2),Sym(2))")
    assert result.exit_code == 2
    assert "Error:" in result.output
    result = run("blocks", "--group", "Sym(3)", "--point", "4")
    assert result.exit_code == 2


def test_maxsub(run):
    result = run("maxsub", "--group", "Sym(4)", "--subgroup", "(1 2)")
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[:2] == ["index\t12", "max\t3"]
    assert sorted(int(line.split("\t")[0]) for line in lines[2:]) == [6, 6, 8]


def test_maxsub_trivial_subgroup(run):
    result = run("maxsub", "--group", "ElemAbelian(2,2)")
    assert result.output.splitlines()[:2] == ["index\t4", "max\t3"]
    result = run(
        "maxsub", "--group", "Sym(3)", "--subgroup", "(1 2);(1 2 3)"
    )
    assert result.output.splitlines() == ["index\t1", "max\t0"]


def test_maxsub_input_errors(run):
    result = run("maxsub", "--group", "Sym(3)", "--subgroup", "(1 4)")
    assert result.exit_code == 2
    result = run("maxsub", "--group", "Cyclic(4)", "--subgroup", "(1 2)")
    assert result.exit_code == 2
    result = run("maxsub", "--group", "Quux(4)")
    assert result.exit_code == 2


def test_maxsub_cap_exceeded(run, config):
    config["INTERVAL_CAP"] = 3
    result = run("maxsub", "--group", "Sym(4)")
    assert result.exit_code == 3
    assert "exceeds 3 subgroups" in result.output


def test_crowns(run):
    result = run("crowns", "--group", "Sym(4)")
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert len(lines) == 6
    assert [line.split("\t")[2] for line in lines[:3]] == ["|4|", "|3|", "|2|"]
    assert all("delta=1" in line for line in lines[3:])


def test_crowns_of_the_trivial_group(run):
    result = run("crowns", "--group", "Cyclic(1)")
    assert result.exit_code == 0
    assert result.output == ""


def test_crowns_with_frattini_factor(run):
    result = run("crowns", "--group", "Cyclic(4)")
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0].endswith("abelian,frattini")
    assert "frattini" in lines[2]


def test_verify(run, tmpdir):
    out = str(tmpdir.join("report.tsv"))
    result = run(
        "verify",
        "--catalog",
        "Sym(3);Cyclic(4)",
        "--suite",
        "soluble",
        "--out",
        out,
    )
    assert result.exit_code == 0
    assert result.output.endswith(" rows, 0 failures\n")
    with open(out) as f:
        assert "# suite\tsoluble\n" in f.read()


def test_verify_json_and_baseline(run, tmpdir):
    out = str(tmpdir.join("report.json"))
    baseline = str(tmpdir.join("baseline.yaml"))
    args = (
        "verify",
        "--catalog",
        "ElemAbelian(2,2)",
        "--suite",
        "ratio",
        "--baseline",
        baseline,
        "--out",
        out,
    )
    assert run(*args).exit_code == 0
    assert tmpdir.join("baseline.yaml").check()
    assert run(*args).exit_code == 0
    with open(out) as f:
        report = json.load(f)
    assert report["header"]["max_ratio"] == pytest.approx(0.375)
    tmpdir.join("baseline.yaml").write("max_ratio: 0.1\n")
    result = run(*args)
    assert result.exit_code == 1
    assert "ratio_baseline" in result.output


def test_verify_bad_catalog(run, tmpdir):
    out = str(tmpdir.join("report.tsv"))
    result = run("verify", "--catalog", "Sym(3", "--out", out)
    assert result.exit_code == 2


def test_verify_requires_out(run):
    result = run("verify", "--catalog", "Sym(3)")
    assert result.exit_code != 0
    assert "--out" in result.output


@pytest.mark.parametrize(
    "catalog",
    [
        "Sym(3);Cyclic(4);ElemAbelian(2,2);Dihedral(4)",
        pytest.param("builtin", marks=pytest.mark.slow),
    ],
)
@pytest.mark.parametrize("suffix", ["tsv", "json"])
def test_verify_reports_are_reproducible(run, tmpdir, catalog, suffix):
    baseline = str(tmpdir.join("baseline.yaml"))
    reports = []
    for i, jobs in enumerate(("1", "1", "2")):
        out = str(tmpdir.join("report{}.{}".format(i, suffix)))
        result = run(
            "verify",
            "--catalog",
            catalog,
            "--suite",
            "all",
            "--jobs",
            jobs,
            "--baseline",
            baseline,
            "--out",
            out,
        )
        assert result.exit_code == 0, result.output
        with open(out, "rb") as f:
            reports.append(f.read())
    assert reports[0] == reports[1] == reports[2]
