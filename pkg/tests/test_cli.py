import json

import pytest

from entwine.cli import main
from entwine.instances import (
    InstanceError,
    build_instance,
    fixture_path,
    instance_from_dict,
    load_instance,
    serialize_instance,
)

from conftest import ALL_FIXTURES, BIMONOID_FIXTURES


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# loading and round trips
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_fixture_round_trip(name):
    path = fixture_path(name)
    inst = load_instance(path)
    text = serialize_instance(inst)
    again = instance_from_dict(json.loads(text))
    assert again.field_p == inst.field_p
    assert again.objects == inst.objects
    assert again.roles == inst.roles
    assert again.maps == inst.maps
    assert serialize_instance(again) == text
    # the shipped file is already in canonical form
    with open(path, "r", encoding="utf-8") as fh:
        assert fh.read() == text


def test_shape_violation_named(tmp_path):
    raw = json.loads(serialize_instance(load_instance(fixture_path("kz2_f3"))))
    raw["maps"]["m"] = {"rows": 3, "cols": 2, "entries": [0] * 6}
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(raw))
    with pytest.raises(InstanceError) as err:
        load_instance(str(bad))
    assert "multiplication m" in str(err.value) or "'A'" in str(err.value)


def test_oversized_entries_reduced_with_warning():
    raw = json.loads(serialize_instance(load_instance(fixture_path("kz2_f3"))))
    raw["maps"]["e"]["entries"] = [4, 3]  # reduces to [1, 0] mod 3
    inst = instance_from_dict(raw)
    assert inst.warnings and "reduced mod 3" in inst.warnings[0]
    (_, a), = inst.roles_of("bimonoid")
    assert a.e.entries_rowmajor() == [1, 0]


def test_max_dim_cap(tmp_path, monkeypatch):
    monkeypatch.setenv("ENTWINE_MAX_DIM", "1")
    with pytest.raises(InstanceError) as err:
        load_instance(fixture_path("kz2_f3"))
    assert "ENTWINE_MAX_DIM" in str(err.value)


def test_unknown_role_kind():
    raw = json.loads(serialize_instance(load_instance(fixture_path("kz2_f3"))))
    raw["roles"]["odd"] = {"kind": "mystery"}
    with pytest.raises(InstanceError):
        instance_from_dict(raw)


# ---------------------------------------------------------------------------
# exit codes
# ---------------------------------------------------------------------------

def test_exit_codes_across_corpus(capsys):
    expected = {
        "kz2_f3": 0,
        "kz3_f2": 0,
        "sweedler_f5": 0,
        "trivial_fp": 0,
        "m2_f2": 1,
    }
    for name, want in expected.items():
        code, _, _ = run(capsys, "galois", fixture_path(name))
        assert code == want, name


def test_fundamental_theorem_exit_codes(capsys):
    code, _, _ = run(capsys, "fundamental-theorem", fixture_path("kz2_f3"), "--samples", "1,2")
    assert code == 0
    code, _, _ = run(capsys, "fundamental-theorem", fixture_path("m2_f2"), "--samples", "1,2")
    assert code == 1


def test_generalized_exit_codes(capsys):
    code, _, _ = run(capsys, "galois-generalized", fixture_path("regular_comodule_f3"))
    assert code == 0
    code, _, _ = run(capsys, "galois-generalized", fixture_path("trivial_coaction_f3"))
    assert code == 1


def test_parse_error_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "galois", str(bad))
    assert code == 2 and "error" in err


def test_missing_file_exits_two(capsys):
    code, _, err = run(capsys, "galois", "/nonexistent/instance.json")
    assert code == 2 and "error" in err


def test_unknown_command_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate", "x.json"])
    assert exc.value.code == 2


def test_missing_role_exits_two(capsys, tmp_path):
    raw = {
        "field_p": 3,
        "objects": {},
        "maps": {},
        "roles": {},
        "meta": "empty",
    }
    f = tmp_path / "empty.json"
    f.write_text(json.dumps(raw))
    code, _, err = run(capsys, "galois", str(f))
    assert code == 2 and "no bimonoid" in err


# ---------------------------------------------------------------------------
# report rendering
# ---------------------------------------------------------------------------

def test_json_reports_byte_identical(capsys):
    for cmd in ("galois", "check-bimonoid", "fundamental-theorem", "tau-split"):
        _, out1, _ = run(capsys, cmd, fixture_path("kz2_f3"), "--json")
        _, out2, _ = run(capsys, cmd, fixture_path("kz2_f3"), "--json")
        assert out1 == out2 and out1.strip()


def test_json_report_structure(capsys):
    code, out, _ = run(capsys, "galois", fixture_path("kz3_f2"), "--json")
    payload = json.loads(out)
    assert payload["exit"] == code == 0
    assert payload["command"] == "galois"
    assert any(c["name"].endswith("invertible (rank 9/9)") for c in payload["checks"])
    assert payload["data"]["antipode"]["rows"] == 3


def test_human_report_antipode_labels(capsys):
    code, out, _ = run(capsys, "galois", fixture_path("kz2_f3"))
    assert code == 0
    assert "S(u) = u" in out and "S(g) = g" in out
    assert "exit: 0" in out


def test_failure_carries_counterexample(capsys, tmp_path):
    raw = json.loads(serialize_instance(load_instance(fixture_path("kz2_f3"))))
    raw["maps"]["m"]["entries"][0] = 2  # break associativity and the unit law
    f = tmp_path / "broken.json"
    f.write_text(json.dumps(raw))
    code, out, _ = run(capsys, "check-monoid", str(f), "--json")
    assert code == 1
    payload = json.loads(out)
    failed = [c for c in payload["checks"] if c["verdict"] == "FAIL"]
    assert failed and any(c["counterexample"] for c in failed)


@pytest.mark.parametrize(
    "cmd",
    (
        "check-monoid",
        "check-comonoid",
        "check-bimonoid",
        "check-entwining",
        "check-hopf-module",
        "derive-entwining",
        "galois-dual",
        "check-duoidal",
        "tau-split",
    ),
)
@pytest.mark.parametrize("name", BIMONOID_FIXTURES)
def test_all_check_commands_pass_on_corpus(capsys, cmd, name):
    code, out, _ = run(capsys, cmd, fixture_path(name))
    want = 1 if (name == "m2_f2" and cmd == "galois-dual") else 0
    assert code == want, (cmd, name, out)


def test_comodule_commands(capsys):
    code, _, _ = run(capsys, "check-comodule-algebra", fixture_path("regular_comodule_f3"))
    assert code == 0
    code, _, _ = run(capsys, "check-comodule-algebra", fixture_path("trivial_coaction_f3"))
    assert code == 0


# ---------------------------------------------------------------------------
# make-instance
# ---------------------------------------------------------------------------

def test_make_instance_round_trips(tmp_path, capsys):
    out_path = tmp_path / "kz4.json"
    code, _, _ = run(capsys, "make-instance", "group-algebra", "--p", "5", "--order", "4", "--out", str(out_path))
    assert code == 0
    inst = load_instance(str(out_path))
    (_, a), = inst.roles_of("bimonoid")
    assert a.dim == 4
    code, _, _ = run(capsys, "galois", str(out_path))
    assert code == 0


def test_make_instance_stdout(capsys):
    code, out, _ = run(capsys, "make-instance", "trivial", "--p", "7")
    assert code == 0
    inst = instance_from_dict(json.loads(out))
    assert inst.field_p == 7


def test_make_instance_rejects_even_sweedler(capsys):
    code, _, err = run(capsys, "make-instance", "sweedler", "--p", "2")
    assert code == 2 and "odd" in err


def test_build_instance_unknown_kind():
    with pytest.raises(InstanceError):
        build_instance("nope", 3)
