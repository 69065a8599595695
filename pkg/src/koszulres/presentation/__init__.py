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

"""Koszul resolutions presentation module."""

from dataclasses import dataclass
from enum import Enum, unique
from typing import Dict, Iterable, List, Tuple, final

from ..algebra import FieldSpec, Path, PathVector, Quiver
from ..algebra.tools import uniform_components
from ..linalg import Subspace


class PresentationError(ValueError):
    """Error raised for presentations failing to parse or validate.

    Args:
        message: the error description.
        line: the 1-based line of the offending token.
        column: the 1-based column of the offending token, 0 when not applicable.

    """

    def __init__(self, message: str, line: int = 0, column: int = 0) -> None:
        """Initialize the error and prefix the message with its location."""
        self.line = line
        self.column = column
        self.reason = message
        if line:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


@unique
class Severity(Enum):
    """Enum representing the severity of a diagnostic."""

    INFO = "info", 20
    WARNING = "warning", 30

    def __new__(cls, value: str, level: int) -> "Severity":
        """Override the default enum constructor and include extra properties."""
        new_enum = object.__new__(cls)
        new_enum._value_ = value
        new_enum._level = level  # type: ignore
        return new_enum

    @property
    def level(self) -> int:
        """Return the matching logging level."""
        return self._level  # type: ignore


@final
@dataclass(frozen=True)
class Diagnostic:
    """A validation finding about a presentation."""

    severity: Severity
    message: str


def canonical_relations(
    field: FieldSpec, relations: Iterable[PathVector]
) -> Tuple[PathVector, ...]:
    """Split relations into uniform blocks and reduce each (degree, block) group.

    Args:
        field: the ground field.
        relations: homogeneous relations, not necessarily uniform.

    Return:
        The reduced row echelon basis of every group, ordered by degree then block.

    """
    groups: Dict[Tuple[int, int, int], List[PathVector]] = {}
    for relation in relations:
        for block in uniform_components(relation):
            key = (relation.degree, block.origin, block.terminus)
            groups.setdefault(key, []).append(block.vector)
    canonical: List[PathVector] = []
    for key in sorted(groups):
        support = sorted({p for v in groups[key] for p in v.paths}, key=Path.sort_key)
        space = Subspace.from_vectors(field.domain, support, groups[key])
        canonical.extend(space.vectors())
    return tuple(canonical)


@final
@dataclass(frozen=True)
class Presentation:
    """Representation of a quiver algebra kQ/I.

    Args:
        field: the ground field.
        quiver: the quiver Q.
        relations: uniform homogeneous generators of I, reduced per degree and block.

    """

    field: FieldSpec
    quiver: Quiver
    relations: Tuple[PathVector, ...] = ()

    def __post_init__(self) -> None:
        """Post initialization, validate the relations."""
        for relation in self.relations:
            if relation.is_zero:
                raise ValueError("zero relation")
            if relation.degree < 2:
                raise ValueError(f"relation of degree {relation.degree} below 2")
            if len(uniform_components(relation)) != 1:
                raise ValueError("relation is not uniform")

    @classmethod
    def create(
        cls, field: FieldSpec, quiver: Quiver, relations: Iterable[PathVector]
    ) -> "Presentation":
        """Create a presentation with canonical relations."""
        return cls(field, quiver, canonical_relations(field, relations))

    @property
    def max_relation_degree(self) -> int:
        """Return the largest relation degree, 0 without relations."""
        return max((r.degree for r in self.relations), default=0)

    @property
    def relation_degrees(self) -> Tuple[int, ...]:
        """Return the distinct relation degrees in increasing order."""
        return tuple(sorted({r.degree for r in self.relations}))

    def relations_of_degree(self, degree: int) -> Tuple[PathVector, ...]:
        """Return the relations of one degree."""
        return tuple(r for r in self.relations if r.degree == degree)
