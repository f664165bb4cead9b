"""Command-line interface: grammar, exit codes, determinism, README examples."""

import json
import re
import shlex
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from ckforms.cli import TripleSyntaxError, parse_triple
from ckforms.embeddings import CatalogError
from ckforms.enumerate import GenerationSpec, generate

README = Path(__file__).resolve().parents[1] / "README.md"

_CKFORMS = shutil.which("ckforms")


def run(*args, **kw):
    if _CKFORMS:
        cmd = [_CKFORMS, *args]
    else:
        cmd = [sys.executable, "-m", "ckforms.cli", *args]
    return subprocess.run(cmd, capture_output=True, text=False, **kw)


def test_version_flag():
    r = run("--version")
    assert r.returncode == 0
    assert b"0.1.0" in r.stdout


def test_missing_subcommand_is_a_usage_error():
    assert run().returncode == 2


def test_verify_standard_triple_exits_zero():
    r = run("verify", "--triple", "so(4,4):so(3,4)@spin+so(1,4)@block")
    assert r.returncode == 0
    text = r.stdout.decode()
    assert "[ok] sum g = h + l (rank 28/28" in text
    assert text.rstrip().endswith("verdict: standard compact form")


def test_verify_rejected_triple_exits_one():
    r = run("verify", "--triple", "so(4,4):so(3,4)@block+so(1,4)@block")
    assert r.returncode == 1
    assert b"verdict: Reject (sum condition fails" in r.stdout


def test_usage_errors_exit_two():
    cases = [
        ("verify", "--triple", "so(4,4):"),
        ("verify", "--triple", "zz(1,2):a+b"),
        ("verify", "--triple", "so(4,4):so(3,9)@block+so(1,4)@block"),
        ("gap", "--space", "nonexistent", "--samples", "10"),
    ]
    for args in cases:
        r = run(*args)
        assert r.returncode == 2, args
        assert r.stderr.decode().startswith("error:"), args


def test_verify_json_output_and_out_file(tmp_path):
    triple = "so(3,4):g2(2)+so(1,4)@block"
    r = run("verify", "--triple", triple, "--format", "json")
    assert r.returncode == 0
    blob = json.loads(r.stdout)
    assert blob["schema_version"] == 1
    assert blob["verdict"]["standard_form"] is True
    assert blob["verdict"]["dims"] == {"g": 21, "h": 14, "l": 10, "intersection": 3}
    out = tmp_path / "verdict.json"
    r2 = run("verify", "--triple", triple, "--format", "json", "--out", str(out))
    assert r2.returncode == 0
    assert out.read_bytes() == r.stdout


def test_gap_runs_are_byte_identical():
    args = ("gap", "--space", "so44xso24-delta", "--samples", "1500",
            "--seed", "11", "--format", "json")
    a = run(*args)
    b = run(*args)
    c = run(*args, "--threads", "2")
    assert a.returncode == b.returncode == c.returncode == 0
    assert a.stdout == b.stdout == c.stdout
    blob = json.loads(a.stdout)
    assert blob["fitted_epsilon"] > 0
    assert blob["space"] == "so44xso24-delta"


def test_table_json_is_deterministic_and_matches_golden_rows():
    args = ("table", "--which", "table1", "--max-n", "1", "--format", "json")
    a = run(*args)
    b = run(*args)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
    blob = json.loads(a.stdout)
    assert [tuple(r["cells"]) for r in blob["rows"]] == [
        ("su(2,2n)", "sp(1,n)", "su(1,2n)"),
        ("so(2,2n)", "su(1,n)", "so(1,2n)"),
        ("so(4,4n)", "so(3,4n)", "sp(1,n)"),
        ("so(4,4)", "so(1,4)", "so(3,4)"),
        ("so(3,4)", "so(1,4)", "g2(2)"),
        ("so(8,8)", "so(7,8)", "so(1,8)"),
    ]


def test_enumerate_reports_each_candidate():
    r = run("enumerate", "--max-n", "1", "--cases", "1")
    assert r.returncode == 0
    assert r.stdout.decode().splitlines() == [
        "[ok] Case1  so(2,4)xsu(2,2):so(2,4)x0+0xsu(2,2)"
    ]


def test_parse_triple_grammar():
    g, h, l, key = parse_triple("SO(4,4) : so(3,4) @ spin + so(1,4)@block")
    assert g.name == "so(4,4)"
    assert h.key == "so(4,4):so(3,4):spin"
    assert l.key == "so(4,4):so(1,4):block"
    assert key == "so(4,4):so(3,4)@spin+so(1,4)@block"
    # product separator: x binds to the following algebra atom, so variant
    # names containing x still parse
    g2, h2, l2, _ = parse_triple(
        "so(2,4)xso(2,4):su(1,2)@complexstructx0+delta(so(2,4))"
    )
    assert h2.key == "[0]so(2,4):su(1,2):complexstruct"
    assert l2.key == "delta(so(2,4),id)"
    for bad in (
        "so(4,4)",
        "so(4,4):a+b+c",
        "so(4,4)xso(2,4):so(3,4)@spin+delta(so(3,4))",
        "so(4,4):delta(so(4,4))+so(1,4)@block",
    ):
        with pytest.raises((TripleSyntaxError, CatalogError, ValueError)):
            parse_triple(bad)


def test_generated_keys_round_trip_through_the_grammar():
    for rec in generate(GenerationSpec(max_n=1)):
        g, h, l, _ = parse_triple(rec.key)
        assert g.name == rec.g.name, rec.key
        assert h.key == rec.h.key, rec.key
        assert l.key == rec.l.key, rec.key


def _fenced_blocks(lang):
    text = README.read_text()
    return re.findall(rf"```{lang}\n(.*?)```", text, flags=re.S)


def test_readme_shell_examples_execute():
    blocks = _fenced_blocks("shell")
    cmds = [
        line.strip()
        for block in blocks
        for line in block.splitlines()
        if line.strip().startswith("ckforms ")
    ]
    assert len(cmds) >= 6
    for cmd in cmds:
        args = shlex.split(cmd)[1:]
        r = run(*args)
        assert r.returncode == 0, (cmd, r.stderr.decode())
        assert r.stdout


def test_readme_python_examples_execute():
    blocks = _fenced_blocks("python")
    assert blocks
    for block in blocks:
        exec(compile(block, "<readme>", "exec"), {})
