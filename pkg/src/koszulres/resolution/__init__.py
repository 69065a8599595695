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

"""Koszul resolutions resolution module."""

from dataclasses import dataclass, field
from enum import Enum, unique
from typing import Dict, List, Optional, Tuple, final

from ..algebra import PathVector, UniformBlock
from ..presentation import Presentation

DEFAULT_MAX_LEVEL = 16
DEFAULT_MAX_BLOCK_PATHS = 5000

Matrix = Tuple[Tuple[PathVector, ...], ...]


class ResourceLimitError(RuntimeError):
    """Error raised when a configured computation limit is exceeded."""


class ConstructionError(RuntimeError):
    """Error raised when an exact system expected to be consistent is not."""


class NotQuadraticError(ValueError):
    """Error raised for ideals with minimal generators above degree 2.

    Args:
        degree: the degree of the offending minimal generator.

    """

    def __init__(self, degree: int) -> None:
        """Initialize the error with the offending degree."""
        self.degree = degree
        super().__init__(
            f"degree-{degree} relation is a minimal generator of the ideal,"
            " f^2 is not generated in degree 2"
        )


@final
@dataclass(frozen=True)
class Limits:
    """Computation limits.

    Args:
        max_level: the largest homological level to compute.
        max_block_paths: the largest number of paths in a single linear system.

    """

    max_level: int = DEFAULT_MAX_LEVEL
    max_block_paths: int = DEFAULT_MAX_BLOCK_PATHS

    def check_level(self, level: int) -> None:
        """Raise if the level is above the limit."""
        if level > self.max_level:
            raise ResourceLimitError(
                f"level {level} exceeds the limit of {self.max_level}"
            )

    def check_paths(self, count: int) -> None:
        """Raise if a path basis is above the limit."""
        if count > self.max_block_paths:
            raise ResourceLimitError(
                f"{count} paths exceed the block limit of {self.max_block_paths}"
            )


@final
@dataclass(frozen=True)
class ResolutionLevel:
    """One level of the resolution data.

    Args:
        n: the homological degree.
        elements: the uniform elements f^n_i of degree n, ordered by block.
        h: the degree 1 coefficients, h[j][i] expresses f^n_i over f^(n-1)_j.

    """

    n: int
    elements: Tuple[UniformBlock, ...]
    h: Matrix = ()

    @property
    def count(self) -> int:
        """Return t_n + 1, the number of elements."""
        return len(self.elements)

    @property
    def vectors(self) -> Tuple[PathVector, ...]:
        """Return the elements as path vectors."""
        return tuple(e.vector for e in self.elements)


@final
@dataclass(frozen=True)
class ResolutionData:
    """The elements and differentials of the right resolution of Lambda_0."""

    presentation: Presentation
    levels: Tuple[ResolutionLevel, ...]

    @property
    def max_level(self) -> int:
        """Return the highest computed level."""
        return len(self.levels) - 1

    def level(self, n: int) -> ResolutionLevel:
        """Return a computed level."""
        if not 0 <= n < len(self.levels):
            raise IndexError(f"level {n} is not computed")
        return self.levels[n]

    @property
    def counts(self) -> List[int]:
        """Return t_n + 1 for every computed level."""
        return [level.count for level in self.levels]

    @property
    def betti(self) -> List[int]:
        """Return the Betti numbers up to the first vanishing level."""
        betti: List[int] = []
        for count in self.counts:
            betti.append(count)
            if not count:
                break
        return betti


@final
@dataclass(frozen=True)
class HomologyTable:
    """Homology dimensions of a complex, keyed by (level, internal degree)."""

    levels: int
    degree: int
    entries: Dict[Tuple[int, int], int] = field(default_factory=dict)

    @property
    def is_exact(self) -> bool:
        """Return true if every entry vanishes."""
        return not any(self.entries.values())

    def first_nonzero(self) -> Optional[Tuple[int, int, int]]:
        """Return (level, degree, dimension) of the first nonzero entry.

        Entries are scanned by level, then by degree.
        """
        for key in sorted(self.entries):
            if self.entries[key]:
                return key[0], key[1], self.entries[key]
        return None


@unique
class VerdictKind(Enum):
    """Enum representing the outcome of a Koszulity certification."""

    KOSZUL_UP_TO = "koszul_up_to"
    NOT_KOSZUL = "not_koszul"


@final
@dataclass(frozen=True)
class Witness:
    """Evidence against Koszulity."""

    reason: str
    level: Optional[int] = None
    degree: Optional[int] = None
    dimension: Optional[int] = None


@final
@dataclass(frozen=True)
class KoszulVerdict:
    """Outcome of certifying Koszulity up to (levels, degree)."""

    kind: VerdictKind
    levels: int
    degree: int
    witness: Optional[Witness] = None

    @property
    def is_koszul(self) -> bool:
        """Return true if the algebra was certified up to the bounds."""
        return self.kind is VerdictKind.KOSZUL_UP_TO

    def __str__(self) -> str:
        """Return the verdict in the koszul_up_to(N,D) form."""
        if self.is_koszul:
            return f"{self.kind.value}({self.levels},{self.degree})"
        reason = self.witness.reason if self.witness else ""
        return f"{self.kind.value}({reason})"


@final
@dataclass(frozen=True)
class CheckResult:
    """Outcome of a structural check, the witness names the first failure."""

    name: str
    passed: bool
    witness: Optional[str] = None
    notes: Tuple[str, ...] = ()


@final
@dataclass(frozen=True)
class LinearComplex:
    """A complex of free right modules generated in degree n at level n.

    Args:
        presentation: the algebra the modules are over.
        generators: per level, the vertex v_i of every summand v_i Lambda.
        differentials: per level n >= 1, the degree 1 matrix [j][i] sending
            generator i of level n to the sum of generator j times entry [j][i].

    """

    presentation: Presentation
    generators: Tuple[Tuple[int, ...], ...]
    differentials: Tuple[Matrix, ...]

    @property
    def max_level(self) -> int:
        """Return the highest level of the complex."""
        return len(self.generators) - 1
