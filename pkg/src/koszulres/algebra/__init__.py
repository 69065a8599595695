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

"""Koszul resolutions algebra module."""

import re
from dataclasses import dataclass
from enum import Enum, unique
from functools import cached_property, lru_cache
from typing import Any, Dict, Iterable, Optional, Tuple, final

from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.domains.domain import Domain

Scalar = Any

_FIELD_PATTERN = re.compile(r"^\s*(?:(QQ?)|GF\s*\(\s*(\d+)\s*\))\s*$")


@unique
class FieldKind(Enum):
    """Enum for relaying the kind of the ground field."""

    RATIONALS = "rationals", "Q"
    PRIME_FIELD = "prime_field", "GF"

    def __new__(cls, value: str, symbol: str) -> "FieldKind":
        """Override the default enum constructor and include extra properties."""
        new_enum = object.__new__(cls)
        new_enum._value = value  # type: ignore
        new_enum._symbol = symbol  # type: ignore
        return new_enum

    @property
    def value(self) -> str:
        """Return the value of the kind."""
        return self._value  # type: ignore

    @property
    def symbol(self) -> str:
        """Return the symbol used for the kind in presentations."""
        return self._symbol  # type: ignore


@lru_cache(maxsize=None)
def _domain_for(kind: FieldKind, characteristic: int) -> Domain:
    if kind is FieldKind.RATIONALS:
        return QQ
    return GF(characteristic)


@final
@dataclass(frozen=True)
class FieldSpec:
    """Representation of the ground field k.

    Args:
        kind: rationals or a prime field.
        characteristic: the prime characteristic, 0 for the rationals.

    """

    kind: FieldKind = FieldKind.RATIONALS
    characteristic: int = 0

    def __post_init__(self) -> None:
        """Post initialization, validate the characteristic."""
        if self.kind is FieldKind.PRIME_FIELD and not isprime(self.characteristic):
            raise ValueError(f"characteristic {self.characteristic} is not prime")
        if self.kind is FieldKind.RATIONALS and self.characteristic != 0:
            raise ValueError("the rationals have characteristic 0")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Create a field specification from its textual form, Q or GF(p)."""
        match = _FIELD_PATTERN.match(text)
        if not match:
            raise ValueError(f"unknown field {text!r}, expected Q or GF(p)")
        if match.group(1):
            return cls()
        return cls(FieldKind.PRIME_FIELD, int(match.group(2)))

    @property
    def domain(self) -> Domain:
        """Return the exact sympy domain backing this field."""
        return _domain_for(self.kind, self.characteristic)

    @property
    def zero(self) -> Scalar:
        """Return the additive identity."""
        return self.domain.zero

    @property
    def one(self) -> Scalar:
        """Return the multiplicative identity."""
        return self.domain.one

    def scalar(self, numerator: int, denominator: int = 1) -> Scalar:
        """Convert an integer fraction to a field element.

        Args:
            numerator: the fraction numerator.
            denominator: the fraction denominator.

        Return:
            The field element numerator/denominator.

        """
        prime = self.kind is FieldKind.PRIME_FIELD
        if denominator == 0 or (prime and denominator % self.characteristic == 0):
            raise ValueError(f"denominator {denominator} vanishes in {self}")
        domain = self.domain
        return domain.quo(domain.convert(numerator), domain.convert(denominator))

    def render(self, value: Scalar) -> str:
        """Return the canonical string of a scalar, p/q or a residue integer."""
        if self.kind is FieldKind.PRIME_FIELD:
            return str(int(value) % self.characteristic)
        numerator, denominator = int(value.numerator), int(value.denominator)
        if denominator == 1:
            return str(numerator)
        return f"{numerator}/{denominator}"

    def __str__(self) -> str:
        """Return the presentation form of the field."""
        if self.kind is FieldKind.PRIME_FIELD:
            return f"GF({self.characteristic})"
        return self.kind.symbol


@final
@dataclass(frozen=True)
class Arrow:
    """Representation of a quiver arrow.

    Args:
        name: the arrow name.
        origin: the name of the origin vertex.
        terminus: the name of the terminus vertex.

    """

    name: str
    origin: str
    terminus: str


@final
@dataclass(frozen=True)
class Quiver:
    """Representation of a finite quiver, ordered as declared."""

    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...]

    def __post_init__(self) -> None:
        """Post initialization, validate names and arrow endpoints."""
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertex names must be unique")
        if len({a.name for a in self.arrows}) != len(self.arrows):
            raise ValueError("arrow names must be unique")
        declared = set(self.vertices)
        for arrow in self.arrows:
            for endpoint in (arrow.origin, arrow.terminus):
                if endpoint not in declared:
                    raise ValueError(
                        f"arrow {arrow.name} uses undeclared vertex {endpoint}"
                    )

    @cached_property
    def _vertex_positions(self) -> Dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _arrow_positions(self) -> Dict[str, int]:
        return {a.name: i for i, a in enumerate(self.arrows)}

    @cached_property
    def endpoints(self) -> Tuple[Tuple[int, int], ...]:
        """Return the (origin, terminus) vertex indices of every arrow."""
        return tuple(
            (self._vertex_positions[a.origin], self._vertex_positions[a.terminus])
            for a in self.arrows
        )

    def vertex_index(self, name: str) -> int:
        """Return the declaration index of a vertex."""
        return self._vertex_positions[name]

    def arrow_index(self, name: str) -> int:
        """Return the declaration index of an arrow."""
        return self._arrow_positions[name]

    def has_arrow(self, name: str) -> bool:
        """Return true if the arrow is declared."""
        return name in self._arrow_positions

    def outgoing(self, vertex: int) -> Tuple[int, ...]:
        """Return the indices of the arrows starting at a vertex."""
        return tuple(i for i, (o, _) in enumerate(self.endpoints) if o == vertex)

    def incoming(self, vertex: int) -> Tuple[int, ...]:
        """Return the indices of the arrows ending at a vertex."""
        return tuple(i for i, (_, t) in enumerate(self.endpoints) if t == vertex)

    def trivial_path(self, vertex: int) -> "Path":
        """Return the trivial path at a vertex."""
        return Path(vertex, vertex, ())

    def arrow_path(self, arrow: int) -> "Path":
        """Return the length one path of an arrow."""
        origin, terminus = self.endpoints[arrow]
        return Path(origin, terminus, (arrow,))

    def opposite(self) -> "Quiver":
        """Return the opposite quiver, every arrow reversed and keeping its name."""
        return Quiver(
            self.vertices,
            tuple(Arrow(a.name, a.terminus, a.origin) for a in self.arrows),
        )


@final
@dataclass(frozen=True)
class Path:
    """Representation of a path, arrows are referenced by declaration index.

    Args:
        origin: index of the origin vertex.
        terminus: index of the terminus vertex.
        arrows: the arrow indices, composed left to right.

    """

    origin: int
    terminus: int
    arrows: Tuple[int, ...]

    @property
    def length(self) -> int:
        """Return the number of arrows in the path."""
        return len(self.arrows)

    def sort_key(self) -> Tuple[Tuple[int, ...], int]:
        """Return the canonical ordering key, lexicographic on arrow indices."""
        return self.arrows, self.origin


def _sorted_terms(
    pairs: Iterable[Tuple[Path, Scalar]]
) -> Tuple[Tuple[Path, Scalar], ...]:
    combined: Dict[Path, Scalar] = {}
    for path, value in pairs:
        if path in combined:
            combined[path] = combined[path] + value
        else:
            combined[path] = value
    return tuple(
        (path, combined[path])
        for path in sorted(combined, key=Path.sort_key)
        if combined[path]
    )


@final
@dataclass(frozen=True)
class PathVector:
    """Representation of a homogeneous k-linear combination of paths.

    Args:
        degree: the common length of all the paths.
        terms: the canonically ordered (path, nonzero scalar) pairs.

    """

    degree: int
    terms: Tuple[Tuple[Path, Scalar], ...] = ()

    def __post_init__(self) -> None:
        """Post initialization, validate homogeneity."""
        for path, value in self.terms:
            if path.length != self.degree:
                raise ValueError(
                    f"path of length {path.length} in a degree {self.degree} vector"
                )
            if not value:
                raise ValueError("zero coefficients are not stored")

    @classmethod
    def build(cls, degree: int, pairs: Iterable[Tuple[Path, Scalar]]) -> "PathVector":
        """Create a vector, combining repeated paths and pruning zeros."""
        return cls(degree, _sorted_terms(pairs))

    @classmethod
    def of(cls, path: Path, coefficient: Scalar) -> "PathVector":
        """Create a single term vector."""
        return cls.build(path.length, [(path, coefficient)])

    @property
    def is_zero(self) -> bool:
        """Return true if the vector has no terms."""
        return not self.terms

    @property
    def paths(self) -> Tuple[Path, ...]:
        """Return the supporting paths in canonical order."""
        return tuple(path for path, _ in self.terms)

    def as_dict(self) -> Dict[Path, Scalar]:
        """Return the terms as a path to scalar mapping."""
        return dict(self.terms)

    def coefficient(self, path: Path) -> Optional[Scalar]:
        """Return the coefficient of a path, None when the path is absent."""
        return self.as_dict().get(path)

    def scale(self, factor: Scalar) -> "PathVector":
        """Return the vector multiplied by a scalar."""
        return PathVector.build(self.degree, ((p, v * factor) for p, v in self.terms))

    def __add__(self, other: "PathVector") -> "PathVector":
        """Return the sum of two vectors of the same degree."""
        if other.degree != self.degree:
            raise ValueError(
                f"can not add vectors of degrees {self.degree} and {other.degree}"
            )
        return PathVector.build(self.degree, self.terms + other.terms)

    def __neg__(self) -> "PathVector":
        """Return the additive inverse."""
        return PathVector(self.degree, tuple((p, -v) for p, v in self.terms))

    def __sub__(self, other: "PathVector") -> "PathVector":
        """Return the difference of two vectors of the same degree."""
        return self + (-other)


@final
@dataclass(frozen=True)
class UniformBlock:
    """Representation of a uniform vector, all paths share origin and terminus."""

    origin: int
    terminus: int
    vector: PathVector

    def __post_init__(self) -> None:
        """Post initialization, validate uniformity."""
        for path in self.vector.paths:
            if (path.origin, path.terminus) != (self.origin, self.terminus):
                raise ValueError("vector is not uniform for the block")

    @property
    def block(self) -> Tuple[int, int]:
        """Return the (origin, terminus) pair."""
        return self.origin, self.terminus

    @property
    def degree(self) -> int:
        """Return the degree of the vector."""
        return self.vector.degree
