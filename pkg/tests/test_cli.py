"""End-to-end tests of the command-line interface: exit codes, report
shape, determinism, and the error paths for broken inputs."""

import io
import json
from contextlib import redirect_stderr, redirect_stdout

import pytest

from hopfcyclic.cli import main
from hopfcyclic.crossed import adjoint, crossed_to_json
from hopfcyclic.hopf import FiniteGroup, group_algebra, hopf_to_json


def run(argv):
    """Returns (exit code, stdout text, stderr text)."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        rc = main(argv)
    return rc, out.getvalue(), err.getvalue()


def run_json(argv):
    rc, out, err = run(argv + ["--format", "json"])
    assert err == ""
    return rc, json.loads(out)


# ---------------------------------------------------------------------------
# homology subcommands
# ---------------------------------------------------------------------------


def test_hc_adjoint_z2():
    rc, rep = run_json(["hc", "z2", "adjoint", "--max-degree", "5"])
    assert rc == 0
    assert rep["status"] == "pass"
    assert rep["tables"]["hc (lambda)"] == [2, 0, 2, 0, 2, 0]


def test_hh_trivial_z2():
    rc, rep = run_json(["hh", "z2", "trivial", "--max-degree", "3"])
    assert rc == 0
    assert rep["tables"]["hh"] == [1, 0, 0, 0]


def test_hc_both_methods_agree():
    rc, rep = run_json(
        ["hc", "z3", "adjoint", "--max-degree", "3", "--method", "both"]
    )
    assert rc == 0
    assert rep["tables"]["hc (lambda)"] == rep["tables"]["hc (bicomplex)"] == [
        3, 0, 3, 0,
    ]
    assert any(c["name"] == "the two cyclic routes agree" for c in rep["checks"])


def test_hh_works_over_a_prime_field():
    rc, rep = run_json(["hh", "z2", "adjoint", "--field", "f2", "--max-degree", "2"])
    assert rc == 0
    assert rep["tables"]["hh"] == [2, 2, 2]


def test_jobs_flag_changes_nothing():
    _, one = run_json(["hc", "z3", "adjoint", "--max-degree", "3"])
    _, four = run_json(["hc", "z3", "adjoint", "--max-degree", "3", "--jobs", "4"])
    assert one["tables"] == four["tables"]


def test_modular_pair_module_over_op_cop():
    rc, rep = run_json(["hc", "z3", "modular_pair:g", "--max-degree", "3"])
    assert rc == 0
    assert rep["tables"]["hc (lambda)"] == [1, 0, 1, 0]


# ---------------------------------------------------------------------------
# report shape and determinism
# ---------------------------------------------------------------------------


def test_report_shape():
    rc, rep = run_json(["hc", "z2", "adjoint", "--max-degree", "2"])
    assert rep["schema"] == 1
    assert rep["command"] == ["hc", "z2", "adjoint"]
    assert rep["config"]["max_degree"] == 2
    assert rep["config"]["field"] == "q"
    assert set(rep["inputs"]) == {"hopf z2", "module adjoint"}
    assert all(len(v) == 64 for v in rep["inputs"].values())
    assert "timings" in rep and "total" in rep["timings"]


def test_reports_are_deterministic_modulo_timings():
    def canonical():
        rc, out, err = run(
            ["burghelea", "z3", "adjoint", "--max-degree", "2", "--format", "json"]
        )
        assert rc == 0
        rep = json.loads(out)
        rep.pop("timings")
        return json.dumps(rep, sort_keys=True)

    assert canonical() == canonical()


def test_table_format_prints_tables():
    rc, out, _ = run(["hc", "z2", "adjoint", "--max-degree", "3"])
    assert rc == 0
    assert "hc (lambda): 2 0 2 0" in out
    assert "status: pass" in out


# ---------------------------------------------------------------------------
# verify suites
# ---------------------------------------------------------------------------


def test_verify_hopf_builtin():
    rc, rep = run_json(["verify", "hopf", "s3"])
    assert rc == 0
    assert all(c["passed"] for c in rep["checks"])
    assert any("antipode" in c["name"] for c in rep["checks"])


def test_verify_cyclic_passes_for_adjoint():
    rc, rep = run_json(["verify", "cyclic", "z3", "adjoint", "--max-degree", "2"])
    assert rc == 0
    assert all(c["passed"] for c in rep["checks"])


def test_verify_cyclic_pinpoints_nonmodular_coefficients():
    # sign action with coaction by the grouplike g: a crossed module that is
    # not modular, so the cyclic operator has the wrong order.
    doc = json.dumps(
        {
            "dim": 1,
            "action": [[0, 0, 0, "1"], [1, 0, 0, "-1"]],
            "coaction": [[0, 0, 1, "1"]],
        }
    )
    rc, rep = run_json(["verify", "cyclic", "z2", doc, "--max-degree", "2"])
    assert rc == 1
    assert rep["status"] == "fail"
    bad = [c for c in rep["checks"] if not c["passed"]]
    assert bad and all("cyclic operator order" in c["name"] for c in bad)
    assert all(c["witness"] for c in bad)


def test_verify_crossed_document():
    h = group_algebra(FiniteGroup.cyclic(3))
    doc = crossed_to_json(adjoint(h))
    doc["base"] = "z3"
    rc, rep = run_json(["verify", "crossed", json.dumps(doc)])
    assert rc == 0
    assert all(c["passed"] for c in rep["checks"])


def test_verify_galois_builtin():
    rc, rep = run_json(["verify", "galois", "kz4_over_kz2"])
    assert rc == 0
    assert rep["tables"]["base dimension"] == [2]


# ---------------------------------------------------------------------------
# galois / burghelea / qtorus subcommands
# ---------------------------------------------------------------------------


def test_galois_twisted_klein():
    rc, rep = run_json(["galois", "twisted_klein", "--max-degree", "2"])
    assert rc == 0
    assert rep["tables"]["hc (relative)"] == [1, 0, 1]
    assert rep["tables"]["hc (transported)"] == [1, 0, 1]


def test_galois_grading_document_matches_builtin():
    doc = json.dumps(
        {"algebra": "z4", "grading": {"group": "z2", "blocks": {"0": [0, 2], "1": [1, 3]}}}
    )
    _, from_doc = run_json(["galois", doc, "--max-degree", "1"])
    _, builtin = run_json(["galois", "kz4_over_kz2", "--max-degree", "1"])
    assert list(from_doc["inputs"].values()) == list(builtin["inputs"].values())
    assert from_doc["tables"] == builtin["tables"]


def test_galois_crossed_product_document():
    doc = json.dumps(
        {
            "crossed_product": {
                "base": "k",
                "group": "z2",
                "cocycle": {"0,0": [[0, 1]], "0,1": [[0, 1]],
                            "1,0": [[0, 1]], "1,1": [[0, -1]]},
            },
            "name": "k_i",
        }
    )
    rc, rep = run_json(["galois", doc, "--max-degree", "1"])
    assert rc == 0
    assert rep["tables"]["hc (relative)"] == [2, 0]


def test_burghelea_s3():
    rc, rep = run_json(["burghelea", "s3", "adjoint", "--max-degree", "3"])
    assert rc == 0
    assert rep["tables"]["hc (direct)"] == [3, 0, 3, 0]
    assert rep["tables"]["hc (folded)"] == [3, 0, 3, 0]
    assert set(rep["tables"]["per class"]) == {"e", "(12)", "(123)"} or len(
        rep["tables"]["per class"]
    ) == 3


def test_qtorus_generic_plane():
    rc, rep = run_json(
        ["qtorus", '{"r":2,"a":[[0,1],[-1,0]],"q_order":"infinite"}',
         "--max-degree", "4"]
    )
    assert rc == 0
    assert rep["tables"]["hh totals"] == [1, 2, 1, 0, 0]
    assert rep["tables"]["hc totals"] == [1, 2, 2, 2, 2]
    assert rep["tables"]["lattice"]["rank"] == 0


def test_qtorus_finite_order_box_check():
    rc, rep = run_json(
        ["qtorus", '{"r":2,"a":[[0,1],[-1,0]],"q_order":3}', "--max-degree", "3"]
    )
    assert rc == 0
    assert rep["tables"]["lattice"] == {"basis": [[0, 3], [3, 0]], "index": 9,
                                        "rank": 2}
    assert rep["tables"]["hc totals"] == [None, None, 2, 2]
    assert any("membership agrees" in c["name"] for c in rep["checks"])


# ---------------------------------------------------------------------------
# error paths
# ---------------------------------------------------------------------------


def test_hc_refuses_prime_fields():
    rc, _, err = run(["hc", "z2", "adjoint", "--field", "f5"])
    assert rc == 2
    assert "characteristic zero" in err


def test_nonprime_field_rejected():
    rc, _, err = run(["hh", "z2", "adjoint", "--field", "f4"])
    assert rc == 2
    assert "prime" in err


def test_mutated_hopf_document_fails_with_witness():
    doc = hopf_to_json(group_algebra(FiniteGroup.cyclic(2)))
    doc["antipode"][1][1] = 0
    rc, _, err = run(["verify", "hopf", json.dumps(doc)])
    assert rc == 1
    assert "antipode" in err


def test_mutated_crossed_document_fails():
    h = group_algebra(FiniteGroup.cyclic(2))
    doc = crossed_to_json(adjoint(h))
    doc["base"] = "z2"
    doc["action"][-1][-1] = "7"
    rc, _, err = run(["verify", "crossed", json.dumps(doc)])
    assert rc == 1
    assert "failed" in err


def test_parse_error_reports_location():
    rc, _, err = run(["qtorus", '{"r":2,'])
    assert rc == 2
    assert "line 1" in err and "column" in err


def test_unknown_builtin_is_an_input_error():
    rc, _, err = run(["hh", "z9", "adjoint"])
    assert rc == 2
    assert "no such file or builtin" in err


def test_sign_character_resolution():
    rc, rep = run_json(["hh", "z2", "sign", "--max-degree", "2"])
    assert rc == 0
    assert rep["tables"]["hh"] == [0, 0, 0]

    rc, _, err = run(["hh", "z3", "sign"])
    assert rc == 2 and "no sign character" in err

    rc, _, err = run(["hh", "z2xz2", "sign"])
    assert rc == 2 and "ambiguous" in err


def test_bad_max_degree_rejected():
    rc, _, err = run(["hc", "z2", "adjoint", "--max-degree", "0"])
    assert rc == 2
    assert "max-degree" in err


def test_nonstrong_grading_fails_as_math_error(tmp_path):
    # upper-triangular 2x2 matrices graded by Z/2 with the strictly upper
    # part in odd degree: a grading, but not strong.
    doc = {
        "algebra": {
            "basis": ["e11", "e22", "e12"],
            "mult": [[0, 0, 0, "1"], [1, 1, 1, "1"], [0, 2, 2, "1"],
                     [2, 1, 2, "1"]],
            "unit": ["1", "1", "0"],
        },
        "grading": {"group": "z2", "blocks": {"0": [0, 1], "1": [2]}},
    }
    path = tmp_path / "ut2.json"
    path.write_text(json.dumps(doc))
    rc, _, err = run(["galois", str(path)])
    assert rc == 1
    assert "not strong" in err
