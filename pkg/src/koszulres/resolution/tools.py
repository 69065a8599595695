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

"""Koszul resolutions resolution module tools."""

from logging import getLogger
from typing import Dict, List, Sequence, Tuple

from ..algebra import Path, PathVector, UniformBlock
from ..algebra.tools import enumerate_paths, multiply
from ..linalg import Matrix as ScalarMatrix
from ..linalg import Subspace, intersect, rank, solve, vector_coordinates
from ..presentation import Presentation
from . import (
    CheckResult,
    ConstructionError,
    HomologyTable,
    KoszulVerdict,
    Limits,
    LinearComplex,
    Matrix,
    NotQuadraticError,
    ResolutionData,
    ResolutionLevel,
    VerdictKind,
    Witness,
)
from .ideal import minimal_generator_degrees, quotient_algebra

logger = getLogger(__name__)

Block = Tuple[int, int]


def _support(vectors: Sequence[PathVector]) -> List[Path]:
    return sorted({p for v in vectors for p in v.paths}, key=Path.sort_key)


def _check_quadratic(presentation: Presentation, limits: Limits) -> None:
    degrees = [k for k in minimal_generator_degrees(presentation, limits) if k > 2]
    if degrees:
        raise NotQuadraticError(min(degrees))


def _solve_h(
    presentation: Presentation,
    previous: Sequence[UniformBlock],
    current: Sequence[UniformBlock],
    limits: Limits,
) -> Matrix:
    quiver = presentation.quiver
    field = presentation.field
    zero = PathVector(1)
    columns: List[List[PathVector]] = [[zero] * len(current) for _ in previous]
    for i, element in enumerate(current):
        unknowns: List[Tuple[int, int]] = []
        products: List[PathVector] = []
        for j, lower in enumerate(previous):
            if lower.origin != element.origin:
                continue
            for arrow in quiver.outgoing(lower.terminus):
                if quiver.endpoints[arrow][1] != element.terminus:
                    continue
                unknowns.append((j, arrow))
                products.append(
                    multiply(
                        lower.vector, PathVector.of(quiver.arrow_path(arrow), field.one)
                    )
                )
        support = _support(products + [element.vector])
        limits.check_paths(len(support))
        index = {p: k for k, p in enumerate(support)}
        coordinates = [
            vector_coordinates(v, index, len(support), field.zero) for v in products
        ]
        system = ScalarMatrix(
            field.domain,
            len(unknowns),
            tuple(
                tuple(column[k] for column in coordinates) for k in range(len(support))
            ),
        )
        solution = solve(
            system, vector_coordinates(element.vector, index, len(support), field.zero)
        )
        if solution.values is None:
            raise ConstructionError(
                f"element {i} of degree {element.degree} is not in the span of the"
                " previous level times arrows"
            )
        for (j, arrow), value in zip(unknowns, solution.values):
            if value:
                columns[j][i] = columns[j][i] + PathVector.of(
                    quiver.arrow_path(arrow), value
                )
        rebuilt = _apply(previous, [row[i] for row in columns], element.degree)
        if rebuilt != element.vector:
            raise ConstructionError(f"identity check failed for element {i}")
    return tuple(tuple(row) for row in columns)


def _apply(
    previous: Sequence[UniformBlock], entries: Sequence[PathVector], degree: int
) -> PathVector:
    result = PathVector(degree)
    for lower, entry in zip(previous, entries):
        if not entry.is_zero:
            result = result + multiply(lower.vector, entry)
    return result


def _next_elements(
    presentation: Presentation,
    previous: Sequence[UniformBlock],
    before: Sequence[UniformBlock],
    limits: Limits,
) -> Tuple[UniformBlock, ...]:
    quiver = presentation.quiver
    field = presentation.field
    shifted: Dict[Block, List[PathVector]] = {}
    for lower in previous:
        for arrow in quiver.outgoing(lower.terminus):
            product = multiply(
                lower.vector, PathVector.of(quiver.arrow_path(arrow), field.one)
            )
            key = (lower.origin, quiver.endpoints[arrow][1])
            shifted.setdefault(key, []).append(product)
    in_ideal: Dict[Block, List[PathVector]] = {}
    quadratic = presentation.relations_of_degree(2)
    for lower in before:
        for relation in quadratic:
            if relation.paths[0].origin != lower.terminus:
                continue
            key = (lower.origin, relation.paths[0].terminus)
            in_ideal.setdefault(key, []).append(multiply(lower.vector, relation))
    elements: List[UniformBlock] = []
    for block in sorted(set(shifted) & set(in_ideal)):
        support = _support(shifted[block] + in_ideal[block])
        limits.check_paths(len(support))
        meet = intersect(
            Subspace.from_vectors(field.domain, support, shifted[block]),
            Subspace.from_vectors(field.domain, support, in_ideal[block]),
        )
        elements.extend(UniformBlock(block[0], block[1], v) for v in meet.vectors())
    return tuple(elements)


def compute_resolution(
    presentation: Presentation, n_max: int, limits: Limits = Limits()
) -> ResolutionData:
    """Compute the elements f^n_i and the h matrices up to a level.

    Level 0 holds the vertices, level 1 the arrows in declaration order, level 2
    the canonical relation basis. Every higher level is, per vertex block, the
    reduced row echelon basis of span{f^(n-1)_i * a} meet span{f^(n-2)_j * g}
    for arrows a and quadratic relations g.

    Args:
        presentation: a presentation whose minimal ideal generators are quadratic.
        n_max: the highest level to compute.
        limits: computation limits.

    Return:
        The resolution data for levels 0 to n_max.

    """
    if n_max < 0:
        raise ValueError("the level bound must be non negative")
    limits.check_level(n_max)
    _check_quadratic(presentation, limits)
    quiver = presentation.quiver
    one = presentation.field.one
    vertices = tuple(
        UniformBlock(v, v, PathVector.of(quiver.trivial_path(v), one))
        for v in range(len(quiver.vertices))
    )
    levels = [ResolutionLevel(0, vertices)]
    if n_max >= 1:
        arrows = tuple(
            UniformBlock(o, t, PathVector.of(quiver.arrow_path(a), one))
            for a, (o, t) in enumerate(quiver.endpoints)
        )
        levels.append(
            ResolutionLevel(1, arrows, _solve_h(presentation, vertices, arrows, limits))
        )
    for n in range(2, n_max + 1):
        elements = _next_elements(
            presentation, levels[n - 1].elements, levels[n - 2].elements, limits
        )
        h = _solve_h(presentation, levels[n - 1].elements, elements, limits)
        levels.append(ResolutionLevel(n, elements, h))
        logger.debug("level %s has %s elements", n, len(elements))
    return ResolutionData(presentation, tuple(levels))


def compute_h(data: ResolutionData, n: int, limits: Limits = Limits()) -> Matrix:
    """Solve f^n_i = sum_j f^(n-1)_j h_ji with every h_ji a combination of arrows.

    Args:
        data: the resolution data holding levels n-1 and n.
        n: the level, 1 or more.
        limits: computation limits.

    Return:
        The matrix h[j][i] of degree 1 vectors, verified against the identity.

    """
    if n < 1:
        raise IndexError("h matrices start at level 1")
    return _solve_h(
        data.presentation,
        data.level(n - 1).elements,
        data.level(n).elements,
        limits,
    )


def right_complex(data: ResolutionData) -> LinearComplex:
    """Return the linear complex of free right modules defined by the h matrices."""
    return LinearComplex(
        data.presentation,
        tuple(tuple(e.terminus for e in level.elements) for level in data.levels),
        tuple(level.h for level in data.levels),
    )


def complex_homology(
    complex_: LinearComplex, n_max: int, d_max: int, limits: Limits = Limits()
) -> HomologyTable:
    """Compute the homology of an augmented linear complex degree by degree.

    Level n in degree d is the sum of v_i Lambda_(d-n), the augmentation sends level
    0 onto Lambda_0, so an exact complex has an all zero table.

    Args:
        complex_: the complex, computed up to level n_max + 1.
        n_max: the highest level reported.
        d_max: the highest internal degree reported.
        limits: computation limits.

    Return:
        The homology dimensions for n <= n_max and d <= d_max.

    """
    if complex_.max_level < n_max + 1:
        raise ValueError(f"the complex must reach level {n_max + 1}")
    algebra = quotient_algebra(complex_.presentation, limits)
    domain = complex_.presentation.field.domain
    one = complex_.presentation.field.one

    def basis(n: int, d: int) -> List[Tuple[int, Path]]:
        if d < n:
            return []
        spanning = [
            (i, path)
            for i, vertex in enumerate(complex_.generators[n])
            for path in algebra.normal_paths(d - n)
            if path.origin == vertex
        ]
        limits.check_paths(len(spanning))
        return spanning

    def differential_rank(n: int, d: int) -> int:
        if n == 0:
            return len(complex_.generators[0]) if d == 0 else 0
        source = basis(n, d)
        target = {key: k for k, key in enumerate(basis(n - 1, d))}
        if not source or not target:
            return 0
        matrix = complex_.differentials[n]
        rows = []
        for i, path in source:
            row = [domain.zero] * len(target)
            single = PathVector.of(path, one)
            for j, entries in enumerate(matrix):
                if entries[i].is_zero:
                    continue
                image = algebra.normal_form(multiply(entries[i], single))
                for word, value in image.terms:
                    row[target[(j, word)]] += value
            rows.append(row)
        return rank(ScalarMatrix(domain, len(target), tuple(map(tuple, rows))))

    ranks: Dict[Tuple[int, int], int] = {}
    for d in range(d_max + 1):
        for n in range(n_max + 2):
            ranks[(n, d)] = differential_rank(n, d)
    entries = {
        (n, d): len(basis(n, d)) - ranks[(n, d)] - ranks[(n + 1, d)]
        for n in range(n_max + 1)
        for d in range(d_max + 1)
    }
    return HomologyTable(n_max, d_max, entries)


def homology_dimensions(
    data: ResolutionData, n_max: int, d_max: int, limits: Limits = Limits()
) -> HomologyTable:
    """Compute the homology table of the right resolution.

    The resolution is extended to level n_max + 1 when needed.

    Args:
        data: the resolution data.
        n_max: the highest level reported.
        d_max: the highest internal degree, at least n_max.
        limits: computation limits.

    Return:
        The homology table, all zero when the linear resolution is exact.

    """
    if d_max < n_max:
        raise ValueError("the degree bound must be at least the level bound")
    if data.max_level < n_max + 1:
        data = compute_resolution(data.presentation, n_max + 1, limits)
    return complex_homology(right_complex(data), n_max, d_max, limits)


def certify_koszul_up_to(
    presentation: Presentation, n_max: int, d_max: int, limits: Limits = Limits()
) -> KoszulVerdict:
    """Certify Koszulity up to (n_max, d_max) or name a witness against it.

    Args:
        presentation: the algebra presentation.
        n_max: the level bound.
        d_max: the internal degree bound.
        limits: computation limits.

    Return:
        koszul_up_to(n_max, d_max), or not_koszul with a non quadratic minimal
        generator or the first nonzero homology entry.

    """
    try:
        data = compute_resolution(presentation, n_max + 1, limits)
    except NotQuadraticError as exc:
        logger.debug("not quadratic: %s", exc)
        return KoszulVerdict(
            VerdictKind.NOT_KOSZUL,
            n_max,
            d_max,
            Witness(str(exc), level=2, degree=exc.degree),
        )
    table = homology_dimensions(data, n_max, d_max, limits)
    found = table.first_nonzero()
    if found is None:
        return KoszulVerdict(VerdictKind.KOSZUL_UP_TO, n_max, d_max)
    n, d, dimension = found
    return KoszulVerdict(
        VerdictKind.NOT_KOSZUL,
        n_max,
        d_max,
        Witness(
            f"nonzero homology at level {n}, degree {d}",
            level=n,
            degree=d,
            dimension=dimension,
        ),
    )


def check_identities(data: ResolutionData) -> CheckResult:
    """Check f^n_i = sum_j f^(n-1)_j h_ji and that every h entry has degree 1."""
    for level in data.levels[1:]:
        previous = data.level(level.n - 1).elements
        for i, element in enumerate(level.elements):
            entries = [row[i] for row in level.h]
            if any(e.degree != 1 for e in entries):
                return CheckResult("identity", False, f"level {level.n} element {i}")
            if _apply(previous, entries, element.degree) != element.vector:
                return CheckResult("identity", False, f"level {level.n} element {i}")
    return CheckResult("identity", True)


def check_directness(
    data: ResolutionData, d_max: int, limits: Limits = Limits()
) -> CheckResult:
    """Check that the sums of the right ideals f^n_i R are direct up to a degree.

    For every level n and degree d <= d_max the products f^n_i * p, p a path of
    length d - n leaving the terminus of f^n_i, must be linearly independent.

    Args:
        data: the resolution data.
        d_max: the highest degree checked.
        limits: computation limits.

    Return:
        The check outcome, the witness names the first dependent (level, degree).

    """
    quiver = data.presentation.quiver
    field = data.presentation.field
    for level in data.levels:
        for d in range(level.n, d_max + 1):
            paths = enumerate_paths(quiver, d - level.n)
            limits.check_paths(len(paths))
            products: Dict[Block, List[PathVector]] = {}
            for element in level.elements:
                for path in paths:
                    if path.origin != element.terminus:
                        continue
                    key = (element.origin, path.terminus)
                    products.setdefault(key, []).append(
                        multiply(element.vector, PathVector.of(path, field.one))
                    )
            for block, vectors in sorted(products.items()):
                support = _support(vectors)
                limits.check_paths(len(support))
                span = Subspace.from_vectors(field.domain, support, vectors)
                if span.dimension != len(vectors):
                    return CheckResult(
                        "directness",
                        False,
                        f"level {level.n}, degree {d}, block {block}",
                    )
    return CheckResult("directness", True)


def euler_characteristic(
    data: ResolutionData, d: int, limits: Limits = Limits()
) -> Dict[Block, int]:
    """Return the alternating sum of the level dimensions in degree d, per block.

    Entry (u, v) is the sum over n of (-1)^n dim of the degree d part of the
    level n summands resolving the simple at u, cut by the idempotent at v. An
    exact resolution gives the identity in degree 0 and zero elsewhere.

    """
    if data.max_level < d and data.levels[-1].count:
        raise ValueError(f"the resolution must reach level {d}")
    algebra = quotient_algebra(data.presentation, limits)
    totals: Dict[Block, int] = {}
    for level in data.levels[: d + 1]:
        sign = -1 if level.n % 2 else 1
        dimensions = algebra.block_dimensions(d - level.n)
        for element in level.elements:
            for (u, v), dimension in dimensions.items():
                if u == element.terminus:
                    key = (element.origin, v)
                    totals[key] = totals.get(key, 0) + sign * dimension
    return {k: v for k, v in sorted(totals.items()) if v}


def combine_rows(
    previous: Sequence[UniformBlock], entries: Sequence[PathVector], degree: int
) -> PathVector:
    """Return sum_j f_j * entries[j]."""
    return _apply(previous, entries, degree)


