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

"""Koszul resolutions comultiplication module.

The constants c_pq(n, i, r) split every f^n_i into the products f^r_p f^(n-r)_q,
the r = 1 constants give the differential of the left resolution.
"""

from dataclasses import dataclass
from dataclasses import field as datafield
from logging import getLogger
from typing import Dict, List, Tuple, final

from .algebra import FieldSpec, Path, PathVector, Scalar
from .algebra.tools import linear_combination, multiply, reverse_vector
from .linalg import Matrix as ScalarMatrix
from .linalg import Subspace, solve, vector_coordinates
from .presentation import Presentation
from .presentation.tools import opposite_presentation
from .resolution import (
    CheckResult,
    ConstructionError,
    Limits,
    LinearComplex,
    Matrix,
    ResolutionData,
    ResolutionLevel,
)
from .resolution.ideal import quotient_algebra
from .resolution.tools import combine_rows, complex_homology, compute_resolution

logger = getLogger(__name__)

Key = Tuple[int, int, int]
Pair = Tuple[int, int]


@final
@dataclass(frozen=True)
class ComultTable:
    """The constants c_pq(n, i, r) with the nullity of every solve.

    Args:
        field: the ground field.
        levels: the highest level n in the table.
        entries: (n, i, r) mapped to the nonzero coefficients keyed by (p, q).
        nullity: (n, i, r) mapped to the dimension of the solution space.

    """

    field: FieldSpec
    levels: int
    entries: Dict[Key, Dict[Pair, Scalar]] = datafield(default_factory=dict)
    nullity: Dict[Key, int] = datafield(default_factory=dict)

    def coefficients(self, n: int, i: int, r: int) -> Dict[Pair, Scalar]:
        """Return the nonzero coefficients of one splitting."""
        return self.entries.get((n, i, r), {})

    def coefficient(self, n: int, i: int, r: int, p: int, q: int) -> Scalar:
        """Return c_pq(n, i, r), zero when absent."""
        return self.coefficients(n, i, r).get((p, q), self.field.zero)


@final
@dataclass(frozen=True)
class LeftResolutionData:
    """The left resolution, generated by the same elements as the right one.

    Args:
        presentation: the algebra presentation.
        levels: the resolution levels, shared with the right resolution.
        differentials: per level n >= 1 the matrix [q][i] of degree 1 vectors,
            generator i maps to the sum of entry [q][i] times generator q.

    """

    presentation: Presentation
    levels: Tuple[ResolutionLevel, ...]
    differentials: Tuple[Matrix, ...]


def compute_comult(
    data: ResolutionData, n: int, i: int, r: int, limits: Limits = Limits()
) -> Tuple[Dict[Pair, Scalar], int]:
    """Solve f^n_i = sum c_pq f^r_p f^(n-r)_q over vertex compatible pairs.

    Args:
        data: the resolution data up to level n.
        n: the level of the split element.
        i: the index of the split element.
        r: the level of the left factor, 0 <= r <= n.
        limits: computation limits.

    Return:
        The nonzero pivot solution keyed by (p, q), and the nullity.

    """
    if not 0 <= r <= n:
        raise IndexError(f"split level {r} outside 0..{n}")
    level = data.level(n)
    if not 0 <= i < level.count:
        raise IndexError(f"element {i} outside level {n}")
    element = level.elements[i]
    domain = data.presentation.field.domain
    pairs: List[Pair] = []
    products: List[PathVector] = []
    for p, left in enumerate(data.level(r).elements):
        if left.origin != element.origin:
            continue
        for q, right in enumerate(data.level(n - r).elements):
            if right.origin == left.terminus and right.terminus == element.terminus:
                pairs.append((p, q))
                products.append(multiply(left.vector, right.vector))
    support = sorted(
        {path for v in products + [element.vector] for path in v.paths},
        key=Path.sort_key,
    )
    limits.check_paths(len(support))
    index = {path: k for k, path in enumerate(support)}
    size = len(support)
    columns = [vector_coordinates(v, index, size, domain.zero) for v in products]
    system = ScalarMatrix(
        domain,
        len(pairs),
        tuple(tuple(column[k] for column in columns) for k in range(size)),
    )
    target = vector_coordinates(element.vector, index, size, domain.zero)
    solution = solve(system, target)
    if solution.values is None:
        raise ConstructionError(f"f^{n}_{i} does not split at level {r}")
    coefficients = {pair: v for pair, v in zip(pairs, solution.values) if v}
    return coefficients, solution.nullity


def comult_table(
    data: ResolutionData, n_max: int, limits: Limits = Limits()
) -> ComultTable:
    """Compute c_pq(n, i, r) for 1 <= n <= n_max, every i and 0 <= r <= n."""
    table = ComultTable(data.presentation.field, n_max)
    for n in range(1, n_max + 1):
        for i in range(data.level(n).count):
            for r in range(n + 1):
                coefficients, nullity = compute_comult(data, n, i, r, limits)
                table.entries[(n, i, r)] = coefficients
                table.nullity[(n, i, r)] = nullity
        logger.debug("split the %s elements of level %s", data.level(n).count, n)
    return table


def _arrow_sum(data: ResolutionData, coefficients: Dict[int, Scalar]) -> PathVector:
    arrows = data.level(1).elements
    return linear_combination(
        1, ((value, arrows[arrow].vector) for arrow, value in coefficients.items())
    )


def h_from_table(table: ComultTable, data: ResolutionData, n: int) -> Matrix:
    """Rebuild h^(n-1,n) as h_ji = sum_l c_jl(n, i, n-1) f^1_l."""
    lower = data.level(n - 1).count
    columns: List[List[PathVector]] = [[] for _ in range(lower)]
    for i in range(data.level(n).count):
        split = table.coefficients(n, i, n - 1)
        for j in range(lower):
            columns[j].append(
                _arrow_sum(data, {q: v for (p, q), v in split.items() if p == j})
            )
    return tuple(tuple(row) for row in columns)


def verify_h_identity(table: ComultTable, data: ResolutionData) -> CheckResult:
    """Check h_ji = sum_l c_jl(n, i, n-1) f^1_l for every computed level.

    Splittings with a positive nullity are checked through the identity
    f^n_i = sum_j f^(n-1)_j h_ji using the h rebuilt from the table.

    Args:
        table: the comultiplication table.
        data: the resolution data.

    Return:
        The check outcome, the witness names the first failing (n, i, j).

    """
    for n in range(1, min(table.levels, data.max_level) + 1):
        rebuilt = h_from_table(table, data, n)
        level = data.level(n)
        previous = data.level(n - 1).elements
        for i, element in enumerate(level.elements):
            column = [row[i] for row in rebuilt]
            if table.nullity.get((n, i, n - 1), 0):
                if combine_rows(previous, column, element.degree) != element.vector:
                    return CheckResult("h-identity", False, f"n={n}, i={i}")
                continue
            for j, entry in enumerate(column):
                if entry != level.h[j][i]:
                    return CheckResult("h-identity", False, f"n={n}, i={i}, j={j}")
    return CheckResult("h-identity", True)


def build_left_resolution(
    table: ComultTable, data: ResolutionData
) -> LeftResolutionData:
    """Build the left differential, entry [q][i] = sum_p c_pq(n, i, 1) f^1_p."""
    differentials: List[Matrix] = [()]
    for n in range(1, table.levels + 1):
        lower = data.level(n - 1).count
        columns: List[List[PathVector]] = [[] for _ in range(lower)]
        for i in range(data.level(n).count):
            split = table.coefficients(n, i, 1)
            for q in range(lower):
                columns[q].append(
                    _arrow_sum(data, {p: v for (p, k), v in split.items() if k == q})
                )
        differentials.append(tuple(tuple(row) for row in columns))
    return LeftResolutionData(
        data.presentation, data.levels[: table.levels + 1], tuple(differentials)
    )


def left_apply(left: LeftResolutionData, n: int, i: int) -> PathVector:
    """Return sum_q l_qi * f^(n-1)_q, which reconstructs f^n_i."""
    result = PathVector(n)
    for q, row in enumerate(left.differentials[n]):
        if not row[i].is_zero:
            result = result + multiply(row[i], left.levels[n - 1].elements[q].vector)
    return result


def _same_spans(
    presentation: Presentation, f: List[PathVector], g: List[PathVector]
) -> bool:
    domain = presentation.field.domain
    support = sorted({p for v in f + g for p in v.paths}, key=Path.sort_key)
    first = Subspace.from_vectors(domain, support, f)
    second = Subspace.from_vectors(domain, support, g)
    return first.basis == second.basis


def left_complex(left: LeftResolutionData) -> LinearComplex:
    """Return the left resolution as a right complex over the opposite algebra."""
    return LinearComplex(
        opposite_presentation(left.presentation),
        tuple(tuple(e.origin for e in level.elements) for level in left.levels),
        tuple(
            tuple(tuple(reverse_vector(entry) for entry in row) for row in matrix)
            for matrix in left.differentials
        ),
    )


def verify_left_resolution(
    presentation: Presentation, n_max: int, d_max: int, limits: Limits = Limits()
) -> CheckResult:
    """Compare the right construction with the mirrored left construction.

    The construction is run on the opposite presentation and read backwards. The
    element counts and spans must agree, the left differential built from the
    comultiplication table must square to zero modulo I and be exact up to
    (n_max, d_max).

    Args:
        presentation: a quadratic presentation.
        n_max: the level bound.
        d_max: the internal degree bound.
        limits: computation limits.

    Return:
        The check outcome with the first failure as witness.

    """
    data = compute_resolution(presentation, n_max + 1, limits)
    mirrored = compute_resolution(opposite_presentation(presentation), n_max, limits)
    for n in range(n_max + 1):
        f = list(data.level(n).vectors)
        g = [reverse_vector(v) for v in mirrored.level(n).vectors]
        if len(f) != len(g):
            return CheckResult("left", False, f"s_{n} = {len(g)}, t_{n} = {len(f)}")
        if not _same_spans(presentation, f, g):
            return CheckResult("left", False, f"spans differ at level {n}")
    left = build_left_resolution(comult_table(data, n_max + 1, limits), data)
    for n in range(1, n_max + 2):
        if any(
            left_apply(left, n, i) != element.vector
            for i, element in enumerate(left.levels[n].elements)
        ):
            return CheckResult("left", False, f"reconstruction fails at level {n}")
    algebra = quotient_algebra(presentation, limits)
    for n in range(2, n_max + 1):
        upper, lower = left.differentials[n], left.differentials[n - 1]
        for i in range(left.levels[n].count):
            for r in range(left.levels[n - 2].count):
                square = PathVector(2)
                for q, row in enumerate(upper):
                    if not row[i].is_zero and not lower[r][q].is_zero:
                        square = square + multiply(row[i], lower[r][q])
                if not algebra.normal_form(square).is_zero:
                    return CheckResult(
                        "left", False, f"square nonzero at n={n}, i={i}, r={r}"
                    )
    homology = complex_homology(left_complex(left), n_max, d_max, limits)
    found = homology.first_nonzero()
    if found is not None:
        return CheckResult(
            "left", False, f"homology at level {found[0]}, degree {found[1]}"
        )
    return CheckResult("left", True, notes=(f"betti {data.betti}",))
