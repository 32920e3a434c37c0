import io
import json

import pytest
from hypothesis import given, settings, strategies as st

from localcoh.cli import (EXIT_CAP, EXIT_FAILED, EXIT_INPUT, EXIT_OK, GroupSpec, InputError,
                          IntegerGroupSpec, run)

G3 = {"modulus": {"p": 3, "n": 2}, "dimension": 2,
      "generators": [[[0, -1], [1, -1]], [[4, 0], [0, 4]]], "label": "G3"}


def _run(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def _write(tmp_path, obj, name="spec.json"):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(path)


def test_verify_counterexample_exit_codes():
    code, text = _run("verify-counterexample", "-p", "3")
    assert code == EXIT_OK and "h1_loc_nontrivial" in text
    assert _run("verify-counterexample", "-p", "2")[0] == EXIT_INPUT
    assert _run("verify-counterexample", "-p", "9")[0] == EXIT_INPUT
    assert _run("verify-counterexample", "-p", "101")[0] == EXIT_CAP
    assert _run("verify-counterexample")[0] == EXIT_INPUT
    assert _run("bogus")[0] == EXIT_INPUT


def test_verify_json_is_deterministic():
    a = _run("verify-counterexample", "-p", "5", "--format", "json")[1]
    b = _run("verify-counterexample", "-p", "5", "--format", "json", "--jobs", "2")[1]
    assert a == b
    data = json.loads(a)
    assert data["schema"] == 1 and data["verdict"]


def test_h1loc_examples(tmp_path):
    code, out = _run("h1loc", "--input", _write(tmp_path, G3), "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["invariant_factors"] == [3]
    cyclic = dict(G3, generators=[[[0, -1], [1, -1]]])
    code, out = _run("h1loc", "--input", _write(tmp_path, cyclic), "--format", "json", "--basis")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["invariant_factors"] == [] and data["basis"] == []
    code, out = _run("h1", "--input", _write(tmp_path, cyclic), "--format", "json", "--basis")
    data = json.loads(out)
    assert len(data["basis"]) == len(data["invariant_factors"])
    assert len(data["elements"]) == data["group_order"] == 3


def test_h1loc_errors(tmp_path):
    singular = dict(G3, generators=[[[3, 0], [0, 1]]])
    assert _run("h1loc", "--input", _write(tmp_path, singular))[0] == EXIT_INPUT
    assert _run("h1loc", "--input", str(tmp_path / "missing.json"))[0] == EXIT_INPUT
    assert _run("h1loc", "--input", _write(tmp_path, G3), "--cap", "4")[0] == EXIT_CAP
    assert _run("h1loc", "--input", _write(tmp_path, G3), "--matrix-cap", "10")[0] == EXIT_CAP


def test_sylow_examples(tmp_path):
    spec = {"modulus": {"p": 3, "n": 2}, "dimension": 2, "generators": [[[0, 8], [1, 8]], [[2, 0], [0, 2]]]}
    code, out = _run("sylow", "--input", _write(tmp_path, spec), "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK and data["group_order"] == 18 and data["sylow_order"] == 9
    level = data["reductions"][0]
    assert level["image_order"] == 6 and level["kernel_order"] == 3 and level["kernel_in_sylow"]
    trivial = dict(spec, generators=[])
    data = json.loads(_run("sylow", "--input", _write(tmp_path, trivial), "--format", "json")[1])
    assert data["sylow_order"] == 1
    data = json.loads(_run("sylow", "--input", _write(tmp_path, G3), "--format", "json")[1])
    assert data["sylow_order"] == data["group_order"] == 9


def test_check_injectivity_examples(tmp_path):
    lift = {"dimension": 2, "generators": [[[0, -1], [1, -1]]]}
    code, out = _run("check-injectivity", "--input", _write(tmp_path, lift), "-p", "3", "--format", "json")
    assert code == EXIT_OK
    values = json.loads(out)["checks"][0]["values"]
    assert values["integer_order"] == values["reduction_order"] == 3
    perms = {"dimension": 3, "generators": [[[0, 1, 0], [1, 0, 0], [0, 0, 1]], [[0, 1, 0], [0, 0, 1], [1, 0, 0]]]}
    code, out = _run("check-injectivity", "--input", _write(tmp_path, perms), "-p", "5", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["checks"][0]["values"]["integer_order"] == 6
    trivial = {"dimension": 2, "generators": []}
    assert _run("check-injectivity", "--input", _write(tmp_path, trivial), "-p", "3")[0] == EXIT_OK
    infinite = {"dimension": 2, "generators": [[[1, 1], [0, 1]]], "cap": 64}
    assert _run("check-injectivity", "--input", _write(tmp_path, infinite), "-p", "3")[0] == EXIT_CAP
    assert _run("check-injectivity", "--input", _write(tmp_path, lift), "-p", "2")[0] == EXIT_INPUT


def test_check_injectivity_minus_one(tmp_path):
    # -1 would collapse mod 2; for odd p it survives
    m = {"dimension": 1, "generators": [[[-1]]]}
    code, out = _run("check-injectivity", "--input", _write(tmp_path, m), "-p", "3", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["checks"][0]["passed"]


def test_group_spec_round_trip():
    spec = GroupSpec.from_dict(G3)
    assert spec.generators[0] == [[0, 8], [1, 8]]
    again = GroupSpec.loads(spec.dumps())
    assert again == spec and again.dumps() == spec.dumps()


@pytest.mark.parametrize("bad", [
    "not json", "[]", {"modulus": {"p": 4, "n": 1}, "dimension": 1, "generators": []},
    {"modulus": {"p": 3}, "dimension": 1, "generators": []},
    {"modulus": {"p": 3, "n": 1}, "dimension": 0, "generators": []},
    {"modulus": {"p": 3, "n": 1}, "dimension": 2, "generators": [[[1, 0]]]},
    {"modulus": {"p": 3, "n": 1}, "dimension": 1, "generators": [[[1.5]]]},
    {"modulus": {"p": 3, "n": 1}, "dimension": 1, "generators": [[["a"]]]},
    {"modulus": {"p": 3, "n": 1}, "dimension": 1, "generators": "x"},
    {"modulus": {"p": 3, "n": 1}, "dimension": 1, "generators": [], "label": 5},
])
def test_malformed_specs(tmp_path, bad):
    path = _write(tmp_path, bad)
    for cmd in ("h1", "h1loc", "sylow"):
        assert _run(cmd, "--input", path)[0] == EXIT_INPUT
    with pytest.raises(InputError):
        GroupSpec.loads(bad if isinstance(bad, str) else json.dumps(bad))


@settings(max_examples=40, deadline=None)
@given(st.recursive(st.none() | st.booleans() | st.integers(-5, 5) | st.text(max_size=3),
                    lambda c: st.lists(c, max_size=3) | st.dictionaries(st.text(max_size=8), c, max_size=4),
                    max_leaves=12))
def test_fuzzed_specs_never_crash(tmp_path_factory, obj):
    path = _write(tmp_path_factory.mktemp("fuzz"), obj)
    for cmd in ("h1loc", "sylow"):
        assert _run(cmd, "--input", path)[0] in (EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_CAP)
    assert _run("check-injectivity", "--input", path, "-p", "3")[0] in (EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_CAP)


def test_integer_spec_round_trip():
    spec = IntegerGroupSpec.loads(json.dumps({"dimension": 2, "generators": [[[0, -1], [1, -1]]], "label": "r"}))
    assert IntegerGroupSpec.from_dict(spec.to_dict()) == spec
    with pytest.raises(InputError):
        IntegerGroupSpec.loads(json.dumps({"dimension": 1, "generators": [[[2]]]}))


def test_text_output_has_no_color_when_piped():
    code, text = _run("verify-counterexample", "-p", "3")
    assert "\x1b[" not in text and "verdict: verified" in text
