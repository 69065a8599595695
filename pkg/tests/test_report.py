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

"""Koszul resolutions report serialization test cases."""

import json

from assertpy import assert_that
from pytest import fixture

from koszulres.algebra import FieldSpec
from koszulres.bimodule import build_bimodule_resolution
from koszulres.comult import ComultTable, comult_table
from koszulres.presentation.parser import parse_presentation
from koszulres.presentation.report import (
    betti_fragment,
    bimodule_fragment,
    build_report,
    check_fragment,
    comult_fragment,
    levels_fragment,
    meta_fragment,
    serialize_report,
    verdict_fragment,
)
from koszulres.resolution import CheckResult
from koszulres.resolution.tools import certify_koszul_up_to, compute_resolution


def _load(resource_path_root, name):
    text = (resource_path_root / ("corpus/" + name + ".alg")).read_text()
    return parse_presentation(text)


@fixture
def dual_numbers(resource_path_root):
    return compute_resolution(_load(resource_path_root, "dn"), 2)


def test_meta_fragment_should_summarize_the_presentation(resource_path_root):
    sut = meta_fragment(_load(resource_path_root, "a4z"), command="resolve")
    assert_that(sut).is_equal_to({
        "field": "Q",
        "vertices": ["1", "2", "3", "4"],
        "arrows": [["a", "1", "2"], ["b", "2", "3"], ["c", "3", "4"]],
        "relations": ["a*b", "b*c"],
        "command": "resolve",
    })


def test_levels_fragment_of_the_dual_numbers_should_render_every_level(dual_numbers):
    sut = levels_fragment(dual_numbers)
    assert_that(sut[0]).is_equal_to({"n": 0, "f": [{"e_v": "1"}], "blocks": [["v", "v"]], "h": []})
    assert_that(sut[1]["h"]).is_equal_to([[{"x": "1"}]])
    assert_that(sut[2]["f"]).is_equal_to([{"x*x": "1"}])


def test_betti_fragment_of_the_plane_should_stop_after_the_first_zero(resource_path_root):
    data = compute_resolution(_load(resource_path_root, "poly2"), 4)
    assert_that(betti_fragment(data)).is_equal_to({"betti": [1, 2, 1, 0]})


def test_comult_fragment_of_a_quantum_plane_should_render_the_constants(resource_path_root):
    data = compute_resolution(_load(resource_path_root, "qp2"), 2)
    sut = comult_fragment(comult_table(data, 2))["c"]
    assert_that(sut).contains(
        {"n": 2, "i": 0, "r": 1, "p": 0, "q": 1, "value": "1"},
        {"n": 2, "i": 0, "r": 1, "p": 1, "q": 0, "value": "-2"},
    )
    assert_that([(row["n"], row["i"], row["r"]) for row in sut]).is_sorted()


def test_comult_fragment_of_an_empty_table_should_hold_an_empty_list():
    assert_that(comult_fragment(ComultTable(FieldSpec(), 0))).is_equal_to({"c": []})


def test_bimodule_fragment_of_the_dual_numbers_should_render_the_tensors(dual_numbers):
    table = comult_table(dual_numbers, 2)
    sut = bimodule_fragment(build_bimodule_resolution(table, dual_numbers, 2))
    assert_that(sut["levels"][0]).is_equal_to({"n": 0, "generators": [["v", "v"]], "delta": []})
    assert_that(sut["levels"][1]["delta"]).is_equal_to([[{"x|e_v": "1", "e_v|x": "-1"}]])
    assert_that(sut["levels"][2]["delta"]).is_equal_to([[{"x|e_v": "1", "e_v|x": "1"}]])


def test_verdict_fragment_of_a_non_koszul_algebra_should_hold_the_witness(resource_path_root):
    sut = verdict_fragment(certify_koszul_up_to(_load(resource_path_root, "nk"), 3, 5))
    assert_that(sut).is_equal_to({
        "verdict": "not_koszul(nonzero homology at level 2, degree 4)",
        "koszul": False,
        "levels": 3,
        "degree": 5,
        "witness": {
            "reason": "nonzero homology at level 2, degree 4",
            "level": 2,
            "degree": 4,
            "dimension": 1,
        },
    })


def test_check_fragment_should_list_the_notes():
    sut = check_fragment(CheckResult("left", True, notes=("betti [1, 2, 1, 0]",)))
    assert_that(sut).is_equal_to({
        "passed": True,
        "witness": None,
        "notes": ["betti [1, 2, 1, 0]"],
    })


def test_build_report_without_parts_should_hold_every_key(resource_path_root):
    sut = build_report(meta_fragment(_load(resource_path_root, "dn")))
    assert_that(sut).contains_key("meta", "levels", "comult", "bimodule", "verdicts")
    assert_that(sut["comult"]).is_empty()
    assert_that(sut["bimodule"]).is_empty()


def test_serialize_report_should_be_deterministic_and_parse_back(dual_numbers):
    presentation = dual_numbers.presentation
    report = build_report(
        meta_fragment(presentation),
        levels_fragment(dual_numbers),
        comult_fragment(comult_table(dual_numbers, 2)),
        verdicts={"koszul": verdict_fragment(certify_koszul_up_to(presentation, 2, 3))},
    )
    sut = serialize_report(report)
    assert_that(sut).ends_with("}\n")
    assert_that(serialize_report(json.loads(sut))).is_equal_to(sut)
    assert_that(json.loads(sut)["verdicts"]["koszul"]["verdict"]).is_equal_to("koszul_up_to(2,3)")
    assert_that(json.loads(sut)["levels"][2]["f"]).is_equal_to([{"x*x": "1"}])
