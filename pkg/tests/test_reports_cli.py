import json

import pytest
from click.testing import CliRunner

from carmlab.cli import RunConfig, main
from carmlab.core_arith import CapacityError
from carmlab.reports import emit_table, join_deltas, max_abs_delta
from carmlab.tables import CountTable


def test_emit_paper_mode_full_range():
    t = emit_table(7, mode="paper")
    assert t.columns[-1] == "source"
    assert t.rows[-1] == ["21", "224763", "20138200", "0.011", "paper"]


def test_emit_computed_matches_paper_rows():
    t = emit_table(6, mode="computed", bound=10**5)
    # the 10^3 two-factor cell differs from the published census (341 = 11*31
    # is a two-factor base-2 pseudoprime); rows from 10^4 agree
    assert t.rows[1][:4] == ["4", "11", "22", "0.50"]
    assert t.rows[2][:4] == ["5", "34", "78", "0.44"]


def test_emit_both_mode_deltas():
    t = emit_table(5, mode="both", bound=10**5)
    assert max_abs_delta(t, "beta") < 1e-4
    assert max_abs_delta(t, "c") == 0


def test_emit_validation():
    with pytest.raises(KeyError):
        emit_table(9)
    with pytest.raises(ValueError):
        emit_table(1, mode="verbatim")
    with pytest.raises(ValueError):
        emit_table(1, mode="computed", bound=100)


def test_join_deltas_skips_unmatched_rows():
    paper = CountTable(name="p", columns=["e", "v"], rows=[["3", "1"], ["4", "2"]])
    comp = CountTable(name="c", columns=["e", "v"], rows=[["3", "1.5"]])
    joined = join_deltas(paper, comp)
    assert len(joined.rows) == 1
    assert joined.rows[0] == ["3", "1", "1.5", "0.5"]


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(threads=0)
    with pytest.raises(ValueError):
        RunConfig(output_format="xml")
    with pytest.raises(ValueError):
        RunConfig(segment_size=16)


def run_cli(*args, env=None):
    return CliRunner().invoke(main, list(args), env=env, catch_exceptions=False)


def test_cli_carmichael_enumerate():
    res = run_cli("carmichael", "enumerate", "--bound", "10000")
    assert res.exit_code == 0
    assert res.output.splitlines()[0] == "n,k,factors,g,primitive"
    assert "561,3,3*11*17,2,True" in res.output


def test_cli_carmichael_construct_needs_k():
    res = CliRunner().invoke(
        main, ["carmichael", "enumerate", "--bound", "10000", "--method", "construct"]
    )
    assert res.exit_code != 0


def test_cli_psp_count_json():
    res = run_cli("--format", "json", "psp", "count", "--bound", "10000")
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert data["rows"][0][:3] == ["10000", "2", "22"]


def test_cli_constants():
    res = run_cli("constants", "--name", "T", "--cutoff", "100000")
    assert res.exit_code == 0
    assert "1.3203" in res.output


def test_cli_asy_eval():
    res = run_cli("asy", "eval", "--formula", "h", "--x", "1e7", "--count", "105")
    assert "1.93388" in res.output
    res = run_cli("asy", "eval", "--formula", "lower_agp_2_7", "--x", "1e7")
    assert res.exit_code == 0
    bad = CliRunner().invoke(main, ["asy", "eval", "--formula", "nope", "--x", "1e7"])
    assert bad.exit_code != 0


def test_cli_asy_table_both():
    res = run_cli("asy", "table", "--name", "h", "--mode", "both", "--bound", "100000")
    assert res.exit_code == 0
    lines = [l for l in res.output.splitlines() if l.startswith("7") is False]
    assert lines[0] == "bound_exp,h_paper,h_computed,h_delta"


def test_cli_table_paper_row():
    res = run_cli("table", "--name", "7")
    assert "21,224763,20138200,0.011,paper" in res.output


def test_cli_opqbt_search_summary():
    res = run_cli("opqbt", "search", "--limit", "20000")
    assert res.exit_code == 0
    assert res.output.rstrip().endswith("7738,0,20000")


def test_cli_cache_env(tmp_path):
    res = run_cli(
        "psp", "count", "--bound", "10000", env={"CARMLAB_CACHE": str(tmp_path)}
    )
    assert res.exit_code == 0
    assert any(p.suffix == ".npy" for p in tmp_path.iterdir())


def test_cli_capacity_error_surfaces():
    with pytest.raises(CapacityError):
        run_cli("psp", "count", "--bound", str(2**33))
