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

"""Koszul resolutions presentation module report serialization.

A report is a JSON object with the keys meta, levels, comult, bimodule and
verdicts. Path vectors map path strings to scalar strings, tensors map
"left|right" strings to scalar strings.
"""

import json
from typing import Any, Dict, List, Mapping, Optional, Sequence

from ..algebra import PathVector
from ..algebra.tools import render_path
from ..bimodule import BimoduleResolution, TensorElement
from ..comult import ComultTable
from ..resolution import CheckResult, KoszulVerdict, Matrix, ResolutionData
from . import Presentation
from .parser import render_relation

Fragment = Dict[str, Any]


def vector_fragment(presentation: Presentation, vector: PathVector) -> Dict[str, str]:
    """Return a path vector as a path string to scalar string mapping."""
    quiver, field = presentation.quiver, presentation.field
    return {render_path(quiver, p): field.render(v) for p, v in vector.terms}


def matrix_fragment(
    presentation: Presentation, matrix: Matrix
) -> List[List[Dict[str, str]]]:
    """Return a matrix of path vectors, row by row."""
    return [[vector_fragment(presentation, e) for e in row] for row in matrix]


def tensor_fragment(
    presentation: Presentation, element: TensorElement
) -> Dict[str, str]:
    """Return a tensor element as a "left|right" string to scalar string mapping."""
    quiver, field = presentation.quiver, presentation.field
    return {
        f"{render_path(quiver, left)}|{render_path(quiver, right)}": field.render(v)
        for (left, right), v in element.terms
    }


def meta_fragment(presentation: Presentation, **extra: Any) -> Fragment:
    """Return the presentation summary, extra keys are merged in."""
    quiver = presentation.quiver
    meta: Fragment = {
        "field": str(presentation.field),
        "vertices": list(quiver.vertices),
        "arrows": [[a.name, a.origin, a.terminus] for a in quiver.arrows],
        "relations": [
            render_relation(presentation, r) for r in presentation.relations
        ],
    }
    meta.update(extra)
    return meta


def betti_fragment(data: ResolutionData) -> Fragment:
    """Return the Betti numbers, up to the first vanishing level."""
    return {"betti": data.betti}


def levels_fragment(data: ResolutionData) -> List[Fragment]:
    """Return every level with its elements, their blocks and the h matrix."""
    presentation = data.presentation
    vertices = presentation.quiver.vertices
    return [
        {
            "n": level.n,
            "f": [vector_fragment(presentation, e.vector) for e in level.elements],
            "blocks": [
                [vertices[e.origin], vertices[e.terminus]] for e in level.elements
            ],
            "h": matrix_fragment(presentation, level.h),
        }
        for level in data.levels
    ]


def comult_fragment(table: ComultTable) -> Fragment:
    """Return the nonzero constants as a list sorted by (n, i, r, p, q)."""
    rows = []
    for (n, i, r), coefficients in sorted(table.entries.items()):
        for (p, q), value in sorted(coefficients.items()):
            rows.append(
                {
                    "n": n,
                    "i": i,
                    "r": r,
                    "p": p,
                    "q": q,
                    "value": table.field.render(value),
                }
            )
    return {"c": rows}


def bimodule_fragment(res: BimoduleResolution) -> Fragment:
    """Return the generators and differential matrices of every level."""
    vertices = res.presentation.quiver.vertices
    return {
        "levels": [
            {
                "n": level.n,
                "generators": [[vertices[o], vertices[t]] for o, t in level.generators],
                "delta": [
                    [tensor_fragment(res.presentation, e) for e in row]
                    for row in level.differential
                ],
            }
            for level in res.levels
        ]
    }


def verdict_fragment(verdict: KoszulVerdict) -> Fragment:
    """Return a verdict with its machine readable witness."""
    witness = verdict.witness
    return {
        "verdict": str(verdict),
        "koszul": verdict.is_koszul,
        "levels": verdict.levels,
        "degree": verdict.degree,
        "witness": None
        if witness is None
        else {
            "reason": witness.reason,
            "level": witness.level,
            "degree": witness.degree,
            "dimension": witness.dimension,
        },
    }


def check_fragment(result: CheckResult) -> Fragment:
    """Return a structural check outcome."""
    return {
        "passed": result.passed,
        "witness": result.witness,
        "notes": list(result.notes),
    }


def build_report(
    meta: Fragment,
    levels: Sequence[Fragment] = (),
    comult: Optional[Fragment] = None,
    bimodule: Optional[Fragment] = None,
    verdicts: Optional[Mapping[str, Fragment]] = None,
) -> Fragment:
    """Assemble the top level report object."""
    return {
        "meta": meta,
        "levels": list(levels),
        "comult": comult["c"] if comult else [],
        "bimodule": bimodule or {},
        "verdicts": dict(verdicts or {}),
    }


def serialize_report(report: Mapping[str, Any]) -> str:
    """Return the deterministic JSON text of a report or fragment.

    Keys are sorted and the output ends with a newline, equal inputs give byte
    identical text.
    """
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
