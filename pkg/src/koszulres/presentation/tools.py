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

"""Koszul resolutions presentation module tools."""

from typing import List

from ..algebra.tools import reverse_vector
from . import Diagnostic, Presentation, Severity


def validate_presentation(presentation: Presentation) -> List[Diagnostic]:
    """Inspect a presentation for properties affecting the resolution.

    Args:
        presentation: the presentation to inspect, it is not modified.

    Return:
        The diagnostics, warnings first.

    """
    diagnostics = []
    for degree in presentation.relation_degrees:
        if degree > 2:
            diagnostics.append(
                Diagnostic(
                    Severity.WARNING,
                    f"relation of degree {degree}: algebra is not quadratic",
                )
            )
    if not presentation.relations:
        diagnostics.append(
            Diagnostic(Severity.INFO, "hereditary: resolution terminates at level 1")
        )
    quiver = presentation.quiver
    for index, vertex in enumerate(quiver.vertices):
        if not quiver.outgoing(index) and not quiver.incoming(index):
            diagnostics.append(
                Diagnostic(Severity.INFO, f"vertex {vertex} has no arrows")
            )
    return diagnostics


def opposite_presentation(presentation: Presentation) -> Presentation:
    """Return the presentation of the opposite algebra.

    Arrows are reversed and keep their names, relations are read backwards.
    """
    return Presentation.create(
        presentation.field,
        presentation.quiver.opposite(),
        (reverse_vector(r) for r in presentation.relations),
    )
