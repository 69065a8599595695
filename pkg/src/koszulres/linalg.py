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

"""Koszul resolutions exact linear algebra module.

Thin immutable wrappers over sympy's DomainMatrix, every computation is exact over
the rationals or a prime field.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, final

from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix

from .algebra import Path, PathVector, Scalar


@final
@dataclass(frozen=True)
class Matrix:
    """Representation of a dense matrix with exact entries.

    Args:
        domain: the sympy domain of the entries.
        cols: the number of columns, kept for matrices without rows.
        rows: the entries, row by row.

    """

    domain: Domain
    cols: int
    rows: Tuple[Tuple[Scalar, ...], ...] = ()

    def __post_init__(self) -> None:
        """Post initialization, validate the shape."""
        for row in self.rows:
            if len(row) != self.cols:
                raise ValueError(f"expected rows of length {self.cols}")

    @classmethod
    def from_rows(
        cls, domain: Domain, rows: Iterable[Sequence[Scalar]], cols: int
    ) -> "Matrix":
        """Create a matrix, converting every entry to the domain."""
        return cls(
            domain, cols, tuple(tuple(domain.convert(v) for v in row) for row in rows)
        )

    @classmethod
    def identity(cls, domain: Domain, size: int) -> "Matrix":
        """Create the identity matrix."""
        return cls(
            domain,
            size,
            tuple(
                tuple(domain.one if i == j else domain.zero for j in range(size))
                for i in range(size)
            ),
        )

    @property
    def n_rows(self) -> int:
        """Return the number of rows."""
        return len(self.rows)

    @property
    def is_empty(self) -> bool:
        """Return true if the matrix has no entries."""
        return not self.rows or not self.cols

    def to_domain_matrix(self) -> DomainMatrix:
        """Return the sympy DomainMatrix holding the same entries."""
        return DomainMatrix(
            [list(row) for row in self.rows], (self.n_rows, self.cols), self.domain
        )


def _from_domain_matrix(domain: Domain, cols: int, dm: DomainMatrix) -> Matrix:
    return Matrix(domain, cols, tuple(tuple(row) for row in dm.to_list()))


def rref(m: Matrix) -> Tuple[Matrix, Tuple[int, ...], int]:
    """Compute the reduced row echelon form.

    Args:
        m: the matrix to reduce.

    Return:
        The nonzero rows of the reduced form, the pivot columns and the rank.

    """
    if m.is_empty:
        return Matrix(m.domain, m.cols), (), 0
    reduced, pivots = m.to_domain_matrix().rref()
    rank = len(pivots)
    rows = tuple(tuple(row) for row in reduced.to_list()[:rank])
    return Matrix(m.domain, m.cols, rows), tuple(int(p) for p in pivots), rank


def rank(m: Matrix) -> int:
    """Return the rank of a matrix."""
    if m.is_empty:
        return 0
    return int(m.to_domain_matrix().rank())


@final
@dataclass(frozen=True)
class Solution:
    """Outcome of an exact linear solve.

    Args:
        values: the canonical pivot solution, None when the system is inconsistent.
        nullity: the dimension of the kernel of the coefficient matrix.

    """

    values: Optional[Tuple[Scalar, ...]]
    nullity: int

    @property
    def consistent(self) -> bool:
        """Return true if a solution exists."""
        return self.values is not None


def solve(a: Matrix, b: Sequence[Scalar]) -> Solution:
    """Solve Ax = b, free variables are set to zero.

    Args:
        a: the coefficient matrix.
        b: the right hand side, one entry per row of a.

    Return:
        The pivot solution and the nullity of a.

    """
    if len(b) != a.n_rows:
        raise ValueError(f"expected {a.n_rows} right hand side entries, got {len(b)}")
    domain = a.domain
    augmented = Matrix(
        domain,
        a.cols + 1,
        tuple(row + (domain.convert(v),) for row, v in zip(a.rows, b)),
    )
    reduced, pivots, _ = rref(augmented)
    if a.cols in pivots:
        return Solution(None, a.cols - (len(pivots) - 1))
    values = [domain.zero] * a.cols
    for row, pivot in zip(reduced.rows, pivots):
        values[pivot] = row[-1]
    return Solution(tuple(values), a.cols - len(pivots))


def nullspace(m: Matrix) -> Matrix:
    """Return a reduced row echelon basis of the kernel {x : mx = 0}."""
    if m.cols == 0:
        return Matrix(m.domain, 0)
    if not m.rows:
        return Matrix.identity(m.domain, m.cols)
    kernel = _from_domain_matrix(m.domain, m.cols, m.to_domain_matrix().nullspace())
    return rref(kernel)[0]


def vector_coordinates(
    vector: PathVector, index: Dict[Path, int], size: int, zero: Scalar
) -> List[Scalar]:
    """Return the coordinates of a vector in an indexed path basis."""
    row = [zero] * size
    for path, value in vector.terms:
        if path not in index:
            raise ValueError("vector leaves the ambient basis")
        row[index[path]] = value
    return row


@final
@dataclass(frozen=True)
class Subspace:
    """Representation of a subspace of the span of an ordered path basis.

    Args:
        ambient: the ordered ambient paths, all of one length.
        basis: the basis in reduced row echelon form without zero rows.

    """

    ambient: Tuple[Path, ...]
    basis: Matrix

    @classmethod
    def span(
        cls, domain: Domain, ambient: Sequence[Path], rows: Iterable[Sequence[Scalar]]
    ) -> "Subspace":
        """Create the span of coordinate rows."""
        ambient = tuple(ambient)
        matrix = Matrix.from_rows(domain, rows, len(ambient))
        return cls(ambient, rref(matrix)[0])

    @classmethod
    def from_vectors(
        cls, domain: Domain, ambient: Sequence[Path], vectors: Iterable[PathVector]
    ) -> "Subspace":
        """Create the span of path vectors."""
        ambient = tuple(ambient)
        index = {p: i for i, p in enumerate(ambient)}
        return cls.span(
            domain,
            ambient,
            (
                vector_coordinates(v, index, len(ambient), domain.zero)
                for v in vectors
            ),
        )

    @classmethod
    def zero(cls, domain: Domain, ambient: Sequence[Path]) -> "Subspace":
        """Create the zero subspace."""
        ambient = tuple(ambient)
        return cls(ambient, Matrix(domain, len(ambient)))

    @property
    def domain(self) -> Domain:
        """Return the sympy domain of the coordinates."""
        return self.basis.domain

    @property
    def dimension(self) -> int:
        """Return the dimension of the subspace."""
        return self.basis.n_rows

    @cached_property
    def index(self) -> Dict[Path, int]:
        """Return the position of every ambient path."""
        return {p: i for i, p in enumerate(self.ambient)}

    @cached_property
    def pivots(self) -> Tuple[int, ...]:
        """Return the pivot column of every basis row."""
        return tuple(
            next(j for j, v in enumerate(row) if v) for row in self.basis.rows
        )

    def coordinates(self, vector: PathVector) -> List[Scalar]:
        """Return the ambient coordinates of a path vector."""
        return vector_coordinates(
            vector, self.index, len(self.ambient), self.domain.zero
        )

    def to_vector(self, row: Sequence[Scalar]) -> PathVector:
        """Return the path vector with the given ambient coordinates."""
        degree = self.ambient[0].length if self.ambient else 0
        return PathVector.build(degree, zip(self.ambient, row))

    def vectors(self) -> List[PathVector]:
        """Return the basis rows as path vectors."""
        return [self.to_vector(row) for row in self.basis.rows]

    def reduce(self, row: Sequence[Scalar]) -> List[Scalar]:
        """Clear the pivot coordinates of a row using the basis."""
        reduced = list(row)
        for basis_row, pivot in zip(self.basis.rows, self.pivots):
            factor = reduced[pivot]
            if factor:
                reduced = [v - factor * w for v, w in zip(reduced, basis_row)]
        return reduced

    def contains(self, row: Sequence[Scalar]) -> bool:
        """Return true if the coordinate row lies in the subspace."""
        return not any(self.reduce(row))

    def __add__(self, other: "Subspace") -> "Subspace":
        """Return the sum of two subspaces of the same ambient."""
        _check_ambient(self, other)
        return Subspace.span(
            self.domain, self.ambient, self.basis.rows + other.basis.rows
        )


def _check_ambient(u: Subspace, v: Subspace) -> None:
    if u.ambient != v.ambient:
        raise ValueError("subspaces have different ambient bases")


def intersect(u: Subspace, v: Subspace) -> Subspace:
    """Intersect two subspaces of the same ambient.

    The kernel of the stacked coordinates [U; -V] gives the pairs (x, y) with
    xU = yV, the vectors xU span the intersection.

    Args:
        u: the first subspace.
        v: the second subspace.

    Return:
        The reduced row echelon basis of the intersection.

    """
    _check_ambient(u, v)
    domain = u.domain
    if not u.dimension or not v.dimension:
        return Subspace.zero(domain, u.ambient)
    stacked = Matrix(
        domain,
        u.dimension + v.dimension,
        tuple(
            tuple(row[k] for row in u.basis.rows)
            + tuple(-row[k] for row in v.basis.rows)
            for k in range(len(u.ambient))
        ),
    )
    rows = []
    for kernel_row in nullspace(stacked).rows:
        combined = [domain.zero] * len(u.ambient)
        for factor, basis_row in zip(kernel_row[: u.dimension], u.basis.rows):
            if factor:
                combined = [c + factor * w for c, w in zip(combined, basis_row)]
        rows.append(combined)
    return Subspace.span(domain, u.ambient, rows)
