"""Exit codes, token resolution, and deterministic JSON output of the CLI."""

import json
import subprocess
import sys

import pytest

from quiverfilt import QQ, check_semibrick, kronecker, save, universal_sequence
from quiverfilt.cli import main


def _json_tail(text):
    """The JSON document printed after the human summary lines."""
    return json.loads(text[text.index("{") :])


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# happy paths


def test_hom_prints_dimension(capsys):
    code, out, _ = run(capsys, "hom", "--left", "r0", "--right", "r0")
    assert code == 0
    assert "dim Hom = 1" in out


def test_ext_json_to_stdout(capsys):
    code, out, _ = run(capsys, "ext", "--left", "r0", "--right", "r0", "--json", "-")
    assert code == 0
    doc = _json_tail(out)
    assert doc["kind"] == "report"
    assert doc["payload"]["dim_ext"] == 1
    assert doc["payload"]["left_dims"] == [1, 1]


def test_euler_value(capsys):
    code, out, _ = run(
        capsys, "euler", "--quiver", "k2", "--x", "1,0", "--y", "1,1", "--json", "-"
    )
    assert code == 0
    assert _json_tail(out)["payload"]["value"] == 1
    code, out, _ = run(
        capsys, "euler", "--quiver", "k2", "--x", "1,1", "--y", "1,0", "--json", "-"
    )
    assert _json_tail(out)["payload"]["value"] == -1


def test_defect_value(capsys):
    code, out, _ = run(capsys, "defect", "--quiver", "k2", "--x", "1,0", "--json", "-")
    assert code == 0
    payload = _json_tail(out)["payload"]
    assert payload["defect"] == -1
    assert payload["radical_generator"] == [1, 1]


def test_brick_with_x11_token(capsys):
    code, out, _ = run(
        capsys, "brick", "--quiver", "k3", "--module", "x11:1,2,0", "--json", "-"
    )
    assert code == 0
    payload = _json_tail(out)["payload"]
    assert payload["status"] == "certified_brick"
    assert payload["end_dim"] == 1


def test_semibrick_certifies(capsys):
    code, out, _ = run(
        capsys, "semibrick", "--members", "r0", "r1", "rinf", "--json", "-"
    )
    assert code == 0
    cert = _json_tail(out)["payload"]["certificate"]
    assert cert["brick_flags"] == ["certified_brick"] * 3
    assert cert["ext_table"][0][1] == 0


def test_semibrick_refusal_is_still_exit_zero(capsys):
    code, out, _ = run(capsys, "semibrick", "--members", "r0", "r0", "--json", "-")
    assert code == 0
    doc = _json_tail(out)
    assert doc["payload"]["ok"] is False
    assert "refused" in out


def test_socle_of_universal_middle(tmp_path, capsys):
    r0 = __import__("quiverfilt").quasi_simple(QQ, QQ.of(0))
    sb = check_semibrick([r0])
    y2 = universal_sequence(r0, sb).middle
    path = tmp_path / "y2.json"
    save(y2, path)
    code, out, _ = run(
        capsys, "socle", "--module", str(path), "--semibrick", "r0", "--json", "-"
    )
    assert code == 0
    payload = _json_tail(out)["payload"]
    assert payload["socle_dims"] == [1, 1]
    assert payload["multiplicities"] == [1]


def test_filtration_and_membership_from_file(tmp_path, capsys):
    r0 = __import__("quiverfilt").quasi_simple(QQ, QQ.of(0))
    sb = check_semibrick([r0])
    y2 = universal_sequence(r0, sb).middle
    path = tmp_path / "y2.json"
    save(y2, path)
    code, out, _ = run(
        capsys, "filtration", "--module", str(path), "--semibrick", "r0", "--json", "-"
    )
    assert code == 0
    payload = _json_tail(out)["payload"]
    assert payload["accepted"] is True
    assert payload["chain_dims"] == [[0, 0], [1, 1], [2, 2]]
    code, out, _ = run(
        capsys, "membership", "--module", str(path), "--semibrick", "r0"
    )
    assert code == 0
    assert "member" in out


def test_membership_refusal_is_data_not_error(capsys):
    code, out, _ = run(
        capsys,
        "membership",
        "--quiver",
        "k2",
        "--module",
        "s1",
        "--semibrick",
        "r0",
        "--json",
        "-",
    )
    assert code == 0
    assert _json_tail(out)["payload"]["accepted"] is False
    assert "not certified" in out


def test_universal_command(capsys):
    code, out, _ = run(
        capsys, "universal", "--base", "r0", "--semibrick", "r0", "--json", "-"
    )
    assert code == 0
    payload = _json_tail(out)["payload"]
    assert payload["middle_dims"] == [2, 2]
    assert payload["universal"] is True
    assert payload["per_member"][0]["invertible"] is True


def test_tower_reports_socle_chain(capsys):
    code, out, _ = run(
        capsys,
        "tower",
        "--base",
        "r0",
        "--semibrick",
        "r0",
        "--levels",
        "3",
        "--json",
        "-",
    )
    assert code == 0
    payload = _json_tail(out)["payload"]
    assert payload["level_dims"] == [[1, 1], [2, 2], [3, 3]]
    assert payload["socle_filtration_accepted"] is True
    assert payload["socle_chain_dims"] == [[0, 0], [1, 1], [2, 2], [3, 3]]


def test_endtower_command(capsys):
    code, out, _ = run(
        capsys,
        "endtower",
        "--base",
        "r0",
        "--semibrick",
        "r0",
        "--levels",
        "3",
        "--json",
        "-",
    )
    assert code == 0
    payload = _json_tail(out)["payload"]
    assert payload["end_dims"] == [1, 2, 3]
    assert payload["ok"] is True
    assert payload["levels_report"][-1]["residue_dim"] == 1


def test_uniserial_command(capsys):
    code, out, _ = run(
        capsys, "uniserial", "--base", "r0", "--semibrick", "r0", "--levels", "3"
    )
    assert code == 0
    assert "uniserial = True" in out


def test_preproj_command(capsys):
    code, out, _ = run(
        capsys,
        "preproj",
        "--quiver",
        "k2",
        "--base",
        "p1",
        "--semibrick",
        "r0",
        "--levels",
        "2",
        "--json",
        "-",
    )
    assert code == 0
    payload = _json_tail(out)["payload"]
    assert payload["level_dims"] == [[1, 0], [2, 1]]
    assert payload["level_defects"] == [-1, -1]
    assert payload["ok"] is True


def test_demo_smoke(capsys):
    code, out, _ = run(capsys, "demo-kronecker")
    assert code == 0
    assert "Kronecker demo" in out


def test_quiver_and_rep_files(tmp_path, capsys):
    q = kronecker(3)
    qpath = tmp_path / "k3.json"
    save(q, qpath)
    code, out, _ = run(
        capsys,
        "ext",
        "--quiver",
        str(qpath),
        "--left",
        "x11:1,0,0",
        "--right",
        "x11:1,0,0",
    )
    assert code == 0
    assert "dim Ext^1 = 2" in out


def test_json_written_to_file_and_byte_identical(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        code = main(
            [
                "tower",
                "--base",
                "r0",
                "--semibrick",
                "r0",
                "--levels",
                "4",
                "--json",
                str(p),
            ]
        )
        assert code == 0
    capsys.readouterr()
    assert paths[0].read_bytes() == paths[1].read_bytes()
    doc = json.loads(paths[0].read_text())
    assert doc["payload"]["level_dims"][-1] == [4, 4]


# ---------------------------------------------------------------------------
# exit codes on bad input


def test_no_command_prints_help(capsys):
    code, out, _ = run(capsys)
    assert code == 1
    assert "COMMAND" in out


def test_unknown_command(capsys):
    code, _, err = run(capsys, "frobnicate")
    assert code == 1
    assert "usage error" in err


def test_bad_module_token(capsys):
    code, _, err = run(capsys, "hom", "--left", "zz9", "--right", "r0")
    assert code == 1
    assert "module token" in err


def test_missing_module_file(capsys):
    code, _, err = run(capsys, "hom", "--left", "no_such.json", "--right", "r0")
    assert code == 1


def test_vertex_token_requires_quiver(capsys):
    code, _, err = run(capsys, "hom", "--left", "p1", "--right", "r0")
    assert code == 1
    assert "--quiver" in err


def test_x11_scalar_count_checked(capsys):
    code, _, err = run(
        capsys, "brick", "--quiver", "k3", "--module", "x11:1,2"
    )
    assert code == 1
    assert "3 scalars" in err


def test_bad_dimension_vector(capsys):
    code, _, err = run(capsys, "euler", "--quiver", "k2", "--x", "1", "--y", "1,1")
    assert code == 1


def test_refused_semibrick_argument_is_exit_two(capsys):
    code, _, err = run(
        capsys, "socle", "--quiver", "k2", "--module", "r0", "--semibrick", "r0", "r0"
    )
    assert code == 2
    assert "refused" in err


def test_rep_file_on_wrong_quiver_is_exit_two(tmp_path, capsys):
    from conftest import make_x11

    m = make_x11(kronecker(3), QQ, [QQ.of(1), QQ.of(0), QQ.of(0)])
    path = tmp_path / "m.json"
    save(m, path)
    code, _, err = run(
        capsys, "hom", "--quiver", "k2", "--left", str(path), "--right", "r0"
    )
    assert code == 2
    assert "different quiver" in err


def test_nonprime_field_is_exit_two(capsys):
    code, _, err = run(capsys, "hom", "--left", "r0", "--right", "r0", "--field", "f6")
    assert code == 2


def test_budget_exhaustion_is_exit_three(capsys):
    code, _, err = run(
        capsys,
        "tower",
        "--base",
        "r0",
        "--semibrick",
        "r0",
        "--levels",
        "9",
        "--budget",
        "4",
    )
    assert code == 3
    assert "budget" in err


def test_uniserial_inapplicable_is_exit_two(capsys):
    # wild three-arrow towers fall outside the uniseriality test's scope
    code, _, err = run(
        capsys,
        "uniserial",
        "--quiver",
        "k3",
        "--base",
        "x11:1,0,0",
        "--semibrick",
        "x11:1,0,0",
        "--levels",
        "2",
    )
    assert code == 2


# ---------------------------------------------------------------------------
# module entry point


def test_python_dash_m_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "quiverfilt", "hom", "--left", "r0", "--right", "rinf"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "dim Hom = 0" in proc.stdout
