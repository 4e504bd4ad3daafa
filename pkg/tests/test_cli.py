import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from toricsmith.cli import RunConfig, fuzz, main, process_text
from toricsmith.errors import InputError, InvalidPolytope
from toricsmith.polytope import LabeledPolytope
from toricsmith.serialize import (
    canonical_json,
    dump_polytope,
    parse_pi,
    parse_polytope,
    parse_rational,
    pi,
    rat,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


def test_shrink_ex5(capsys):
    code, out = run(capsys, "shrink", FIXTURES / "ex5.json")
    assert code == 0
    res = json.loads(out)["result"]
    assert res["times"] == ["2", "6"]
    assert res["frozen_sets"] == [[1, 2], [3, 5]]


def test_gromov_square(capsys):
    code, out = run(capsys, "gromov", FIXTURES / "sq.json")
    res = json.loads(out)["result"]
    assert code == 0
    assert res["lower"]["pi_coefficient"] == "4"
    assert res["upper"]["pi_coefficient"] == "4"
    assert res["equality"] is True


def test_bad_file_exits_two(capsys):
    code, out = run(capsys, "validate", FIXTURES / "bad.json")
    assert code == 2
    assert json.loads(out)["error"]["kind"] == "InvalidPolytope"


def test_io_and_parse_errors_exit_one(capsys, tmp_path):
    code, out = run(capsys, "validate", tmp_path / "missing.json")
    assert code == 1 and "error" in json.loads(out)
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    code, out = run(capsys, "shrink", broken)
    assert code == 1 and json.loads(out)["error"]["kind"] == "InputError"


def test_non_compact_input_exits_two(capsys, tmp_path):
    f = tmp_path / "open.json"
    f.write_text(json.dumps({"dim": 2, "constraints": [
        {"normal": [1, 0], "offset": "1"}, {"normal": [0, 1], "offset": "1"},
        {"normal": [1, 1], "offset": "3"}]}))
    assert run(capsys, "validate", f)[0] == 2
    assert run(capsys, "decompose", f)[0] == 2


GOOD_FILES = sorted(p.name for p in FIXTURES.glob("*.json") if p.name != "bad.json")


@pytest.mark.parametrize("name", GOOD_FILES)
def test_all_succeeds_on_fixtures(capsys, name):
    code, out = run(capsys, "all", FIXTURES / name)
    assert code == 0
    doc = json.loads(out)
    assert doc["tool"] == "toricsmith" and doc["command"] == "all"
    assert len(doc["input_sha256"]) == 64


def test_verification_failure_exits_three(monkeypatch):
    import toricsmith.cli as cli
    from toricsmith.decompose import Check, VerificationReport

    monkeypatch.setattr(cli, "verify_theorem1",
                        lambda p, fs: VerificationReport((Check("intersection", False, "forced"),)))
    text = (FIXTURES / "sq.json").read_text()
    code, doc = process_text(text, RunConfig("decompose"))
    assert code == 3 and doc["error"]["kind"] == "VerificationFailed"
    code, _ = process_text(text, RunConfig("decompose", verify=False))
    assert code == 0


def test_output_is_deterministic(capsys):
    a = run(capsys, "all", FIXTURES / "ex5.json")
    b = run(capsys, "all", FIXTURES / "ex5.json")
    assert a == b


def test_parallel_jobs_give_same_bytes(capsys, tmp_path):
    files = [FIXTURES / f"{n}.json" for n in ("sq", "ex2", "ex5")]
    serial = run(capsys, "shrink", *files)
    parallel = run(capsys, "shrink", *files, "--jobs", 3)
    assert serial == parallel
    d1, d2 = tmp_path / "a", tmp_path / "b"
    d1.mkdir()
    d2.mkdir()
    run(capsys, "shrink", *files, "--output", d1)
    run(capsys, "shrink", *files, "--output", d2, "--jobs", 2)
    names = sorted(p.name for p in d1.iterdir())
    assert names == ["ex2.shrink.json", "ex5.shrink.json", "sq.shrink.json"]
    assert all((d1 / n).read_bytes() == (d2 / n).read_bytes() for n in names)


def test_lu_bound_env_and_flag(capsys, monkeypatch):
    monkeypatch.setenv("TORICSMITH_LU_BOUND", "5")
    _, out = run(capsys, "gromov", FIXTURES / "cp2.json")
    assert json.loads(out)["result"]["upper"]["search_bound"] == 5
    _, out = run(capsys, "gromov", FIXTURES / "cp2.json", "--lu-bound", 7)
    assert json.loads(out)["result"]["upper"]["search_bound"] == 7
    monkeypatch.setenv("TORICSMITH_LU_BOUND", "many")
    assert run(capsys, "gromov", FIXTURES / "cp2.json")[0] == 1


def test_text_format(capsys):
    code, out = run(capsys, "gromov", FIXTURES / "sq.json", "--format", "text")
    assert code == 0
    assert "pi_coefficient: 4" in out
    assert not out.lstrip().startswith("{")


def test_fuzz_subcommand(capsys):
    code, doc = fuzz(seed=3, count=6)
    assert code == 0 and doc["result"]["failures"] == []
    code, out = run(capsys, "fuzz", "--seed", 3, "--count", 6)
    assert code == 0 and json.loads(out) == json.loads(canonical_json(doc))


def test_canonical_json_sorted_with_newline():
    assert canonical_json({"b": 1, "a": [1]}) == '{\n  "a": [\n    1\n  ],\n  "b": 1\n}\n'


def test_rational_parsing():
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert parse_rational(4) == 4
    for bad in ("1.5", "1/0", True, None, "x"):
        with pytest.raises(InputError):
            parse_rational(bad)
    with pytest.raises(InputError):
        parse_pi({"coefficient": "1"})


def test_polytope_schema_errors():
    with pytest.raises(InputError):
        parse_polytope([])
    with pytest.raises(InputError):
        parse_polytope({"dim": 1, "constraints": [{"normal": [1.5], "offset": "1"}]})
    with pytest.raises(InvalidPolytope):
        parse_polytope({"dim": 2, "constraints": [{"normal": [1], "offset": "1"}] * 3})
    with pytest.raises(InvalidPolytope):
        parse_polytope({"dim": 1, "constraints": [{"normal": [0], "offset": "1"}] * 2})


rationals = st.fractions(max_denominator=10 ** 6)


@given(rationals)
def test_rational_round_trip(x):
    assert parse_rational(rat(x)) == x
    assert parse_pi(json.loads(canonical_json(pi(x)))) == x


@given(st.integers(1, 3).flatmap(lambda n: st.lists(
    st.tuples(st.lists(st.integers(-4, 4), min_size=n, max_size=n).filter(any).map(tuple), rationals),
    min_size=n + 1, max_size=6)))
def test_polytope_round_trip(rows):
    p = LabeledPolytope.from_rows(rows)
    text = canonical_json(dump_polytope(p))
    assert parse_polytope(json.loads(text)) == p
