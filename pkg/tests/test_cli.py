# Copyright Tomer Figenblat.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Koszul resolutions command line script test cases."""

import json
import logging

from assertpy import assert_that
from pytest import mark

from koszulres.resolution import ConstructionError
from scripts import koszul
from scripts.koszul import CheckKind, Command, RunConfig, run


def _corpus(resource_path_root, name):
    return str(resource_path_root / ("corpus/" + name + ".alg"))


def _run_to_json(tmp_path, *argv):
    output = tmp_path / "report.json"
    code = run([*argv, "--json", str(output)])
    return code, json.loads(output.read_text(encoding="utf-8"))


def test_resolve_of_the_plane_should_report_the_betti_numbers(resource_path_root, tmp_path):
    code, sut = _run_to_json(tmp_path, "resolve", _corpus(resource_path_root, "poly2"))
    assert_that(code).is_equal_to(koszul.EXIT_OK)
    assert_that(sut["meta"]["betti"]).is_equal_to([1, 2, 1, 0])
    assert_that(sut["levels"][2]["h"]).is_equal_to([[{"y": "1"}], [{"x": "-1"}]])
    assert_that(sut["verdicts"]["identity"]["passed"]).is_true()
    assert_that(sut["verdicts"]["directness"]["passed"]).is_true()


def test_resolve_without_a_json_path_should_write_to_stdout(resource_path_root, capsys):
    code = run(["resolve", _corpus(resource_path_root, "dn"), "-n", "2"])
    assert_that(code).is_equal_to(koszul.EXIT_OK)
    sut = json.loads(capsys.readouterr().out)
    assert_that(sut["levels"][2]["f"]).is_equal_to([{"x*x": "1"}])


def test_resolve_of_a_hereditary_quiver_should_stop_at_level_one(resource_path_root, tmp_path, caplog):
    with caplog.at_level(logging.INFO):
        code, sut = _run_to_json(tmp_path, "resolve", _corpus(resource_path_root, "a3"))
    assert_that(code).is_equal_to(koszul.EXIT_OK)
    assert_that(sut["meta"]["betti"]).is_equal_to([3, 2, 0])
    assert_that(caplog.text).contains("hereditary: resolution terminates at level 1")


def test_resolve_of_a_non_quadratic_algebra_should_exit_with_the_witness(resource_path_root, tmp_path, caplog):
    code, sut = _run_to_json(tmp_path, "resolve", _corpus(resource_path_root, "kr3"))
    assert_that(code).is_equal_to(koszul.EXIT_NOT_KOSZUL)
    assert_that(sut["verdicts"]["koszul"]["witness"]["reason"]).is_equal_to(
        "degree-3 relation is a minimal generator of the ideal, f^2 is not generated in degree 2"
    )
    assert_that(caplog.text).contains("relation of degree 3: algebra is not quadratic")


def test_check_koszul_of_the_dual_numbers_should_certify_the_bounds(resource_path_root, tmp_path):
    code, sut = _run_to_json(tmp_path, "check-koszul", _corpus(resource_path_root, "dn"), "-n", "6", "-d", "8")
    assert_that(code).is_equal_to(koszul.EXIT_OK)
    assert_that(sut["verdicts"]["koszul"]["verdict"]).is_equal_to("koszul_up_to(6,8)")


def test_check_koszul_of_a_non_koszul_algebra_should_name_the_homology(resource_path_root, tmp_path):
    code, sut = _run_to_json(tmp_path, "check-koszul", _corpus(resource_path_root, "nk"), "-n", "3", "-d", "5")
    assert_that(code).is_equal_to(koszul.EXIT_NOT_KOSZUL)
    assert_that(sut["verdicts"]["koszul"]["witness"]).is_equal_to({
        "reason": "nonzero homology at level 2, degree 4",
        "level": 2,
        "degree": 4,
        "dimension": 1,
    })


def test_comult_of_a_linear_quiver_should_list_the_constants(resource_path_root, tmp_path):
    code, sut = _run_to_json(tmp_path, "comult", _corpus(resource_path_root, "a4z"), "-n", "3")
    assert_that(code).is_equal_to(koszul.EXIT_OK)
    assert_that(sut["comult"]).contains(
        {"n": 3, "i": 0, "r": 1, "p": 0, "q": 1, "value": "1"},
        {"n": 3, "i": 0, "r": 2, "p": 0, "q": 2, "value": "1"},
    )
    assert_that(sut["verdicts"]["h-identity"]["passed"]).is_true()
    assert_that(sut["bimodule"]).is_empty()


def test_comult_of_a_non_koszul_algebra_should_stop_after_the_certification(resource_path_root, tmp_path):
    code, sut = _run_to_json(tmp_path, "comult", _corpus(resource_path_root, "nk"), "-n", "3", "-d", "5")
    assert_that(code).is_equal_to(koszul.EXIT_NOT_KOSZUL)
    assert_that(sut["comult"]).is_empty()
    assert_that(sut["verdicts"]).contains_only("koszul")


def test_bimodule_of_the_dual_numbers_with_every_check_should_pass(resource_path_root, tmp_path):
    code, sut = _run_to_json(tmp_path, "bimodule", _corpus(resource_path_root, "dn"), "-n", "3", "-c", "all")
    assert_that(code).is_equal_to(koszul.EXIT_OK)
    assert_that(sut["bimodule"]["levels"][1]["delta"]).is_equal_to([[{"x|e_v": "1", "e_v|x": "-1"}]])
    assert_that(sut["bimodule"]["levels"][2]["delta"]).is_equal_to([[{"x|e_v": "1", "e_v|x": "1"}]])
    assert_that(sut["verdicts"]).contains_key(
        "delta-squared",
        "tensor-down-right",
        "tensor-down-left",
        "bimodule-exact",
        "bimodule-euler",
        "left",
        "linear",
    )
    assert_that([v.get("passed", True) for v in sut["verdicts"].values()]).does_not_contain(False)


def test_report_over_gf5_should_hold_every_stage(resource_path_root, tmp_path):
    code, sut = _run_to_json(tmp_path, "report", _corpus(resource_path_root, "poly3"), "-n", "4", "--field", "GF(5)")
    assert_that(code).is_equal_to(koszul.EXIT_OK)
    assert_that(sut["meta"]["field"]).is_equal_to("GF(5)")
    assert_that(sut["meta"]["betti"]).is_equal_to([1, 3, 3, 1, 0])
    assert_that(sut["levels"]).is_length(5)
    assert_that(sut["comult"]).is_not_empty()
    assert_that(sut["bimodule"]["levels"]).is_length(5)
    assert_that(sut["verdicts"]["koszul"]["verdict"]).is_equal_to("koszul_up_to(4,6)")


def test_report_run_twice_should_write_identical_bytes(resource_path_root, tmp_path):
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    for output in (first, second):
        code = run(["report", _corpus(resource_path_root, "qp2"), "-n", "3", "-c", "all", "--json", str(output)])
        assert_that(code).is_equal_to(koszul.EXIT_OK)
    assert_that(second.read_bytes()).is_equal_to(first.read_bytes())


def test_report_of_a_non_koszul_algebra_should_hold_every_stage(resource_path_root, tmp_path):
    code, sut = _run_to_json(tmp_path, "report", _corpus(resource_path_root, "nk"), "-n", "3", "-d", "5")
    assert_that(code).is_equal_to(koszul.EXIT_NOT_KOSZUL)
    assert_that(sut["verdicts"]["koszul"]["koszul"]).is_false()
    assert_that(sut["verdicts"]["koszul"]["witness"]["level"]).is_equal_to(2)
    assert_that(sut["levels"]).is_length(4)
    assert_that(sut["comult"]).is_not_empty()
    assert_that(sut["bimodule"]["levels"]).is_length(4)
    assert_that(sut["verdicts"]).contains_key("h-identity", "delta-squared", "tensor-down-right")


def test_bimodule_exact_with_a_degree_above_the_levels_should_check_the_euler_identity(resource_path_root, tmp_path):
    code, sut = _run_to_json(tmp_path, "bimodule", _corpus(resource_path_root, "dn"), "-n", "2", "-d", "5", "-c", "exact")
    assert_that(code).is_equal_to(koszul.EXIT_OK)
    assert_that(sut["bimodule"]["levels"]).is_length(3)
    assert_that(sut["verdicts"]["bimodule-euler"]["passed"]).is_true()
    assert_that(sut["verdicts"]["bimodule-exact"]["passed"]).is_true()


def test_check_koszul_with_a_redundant_cubic_relation_should_certify_the_plane(tmp_path):
    source = tmp_path / "plane.alg"
    source.write_text("vertices v\narrows\nx : v -> v\ny : v -> v\nrelations\nx*y - y*x\nx*x*y - x*y*x\n")
    code, sut = _run_to_json(tmp_path, "check-koszul", str(source), "-n", "4", "-d", "6")
    assert_that(code).is_equal_to(koszul.EXIT_OK)
    assert_that(sut["verdicts"]["koszul"]["verdict"]).is_equal_to("koszul_up_to(4,6)")


def test_run_with_a_mixed_degree_relation_should_exit_as_invalid(tmp_path, capsys):
    source = tmp_path / "bad.alg"
    source.write_text("vertices v\narrows\nx : v -> v\ny : v -> v\nrelations\nx*y - x\n")
    assert_that(run(["resolve", str(source)])).is_equal_to(koszul.EXIT_INVALID)
    assert_that(capsys.readouterr().err).contains("mixed-degree relation")


def test_run_with_a_missing_file_should_exit_as_invalid(tmp_path):
    assert_that(run(["resolve", str(tmp_path / "missing.alg")])).is_equal_to(koszul.EXIT_INVALID)


@mark.parametrize("argv, message", [
    (["-n", "1"], "levels must be at least 2, got 1"),
    (["-n", "4", "-d", "3"], "degree 3 must be at least levels 4"),
    (["--field", "GF(6)"], "characteristic 6 is not prime"),
])
def test_run_with_invalid_bounds_should_exit_as_invalid(resource_path_root, capsys, argv, message):
    assert_that(run(["check-koszul", _corpus(resource_path_root, "dn"), *argv])).is_equal_to(koszul.EXIT_INVALID)
    assert_that(capsys.readouterr().err).contains(message)


def test_run_above_the_path_limit_should_exit_with_the_limit_code(resource_path_root, capsys):
    code = run(["resolve", _corpus(resource_path_root, "poly2"), "--max-paths", "2"])
    assert_that(code).is_equal_to(koszul.EXIT_LIMIT)
    assert_that(capsys.readouterr().err).contains("exceed the block limit of 2")


def test_run_with_a_failing_construction_should_report_it(resource_path_root, tmp_path, monkeypatch):
    def failing(config, presentation):
        raise ConstructionError("f^3_0 does not split at level 1")

    monkeypatch.setitem(koszul.COMMANDS, Command.RESOLVE, failing)
    code, sut = _run_to_json(tmp_path, "resolve", _corpus(resource_path_root, "dn"))
    assert_that(code).is_equal_to(koszul.EXIT_NOT_KOSZUL)
    assert_that(sut["verdicts"]["construction"]).is_equal_to({
        "passed": False,
        "witness": "f^3_0 does not split at level 1",
        "notes": [],
    })


def test_run_config_should_default_the_degree_bound_to_two_above_the_levels():
    sut = RunConfig("in.alg", Command.CHECK_KOSZUL, levels=5)
    assert_that(sut.degree_bound).is_equal_to(7)
    assert_that(sut.checks).is_equal_to(frozenset({CheckKind.SQUARE, CheckKind.TENSOR}))


def test_check_kind_expand_with_all_should_select_every_check():
    assert_that(CheckKind.expand(["all"])).is_equal_to(
        frozenset({CheckKind.SQUARE, CheckKind.TENSOR, CheckKind.EXACT, CheckKind.LEFT})
    )
    assert_that(CheckKind.expand(["left"])).is_equal_to(frozenset({CheckKind.LEFT}))


def test_command_should_carry_its_name_and_description():
    assert_that(Command("check-koszul")).is_equal_to(Command.CHECK_KOSZUL)
    assert_that(Command.REPORT.description).is_equal_to("run every stage into one report")
