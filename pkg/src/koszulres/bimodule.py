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

"""Koszul resolutions bimodule module.

Level n of the bimodule resolution is the sum of the projective bimodules
Lambda o(f^n_i) (x) t(f^n_i) Lambda. Entry [j][i] of the differential is a tensor
sum of pairs (left, right) sending the generator i to left * generator j * right.
"""

from dataclasses import dataclass
from logging import getLogger
from typing import Dict, Iterable, List, Sequence, Tuple, final

from .algebra import FieldSpec, Path, PathVector, Scalar
from .algebra.tools import compose_paths
from .comult import ComultTable, LeftResolutionData
from .linalg import Matrix as ScalarMatrix
from .linalg import rank
from .presentation import Presentation
from .resolution import (
    CheckResult,
    HomologyTable,
    Limits,
    Matrix,
    ResolutionData,
)
from .resolution.ideal import QuotientAlgebra, quotient_algebra

logger = getLogger(__name__)

Block = Tuple[int, int]
PathPair = Tuple[Path, Path]
SortKey = Tuple[Tuple[int, ...], int]


def _pair_key(pair: PathPair) -> Tuple[int, SortKey, int, SortKey]:
    left, right = pair
    return left.length, left.sort_key(), right.length, right.sort_key()


@final
@dataclass(frozen=True)
class TensorElement:
    """Representation of an element of Lambda (x) Lambda.

    Args:
        terms: the canonically ordered ((left, right), nonzero scalar) pairs, both
            paths in normal form.

    """

    terms: Tuple[Tuple[PathPair, Scalar], ...] = ()

    @classmethod
    def build(cls, pairs: Iterable[Tuple[PathPair, Scalar]]) -> "TensorElement":
        """Create an element, combining repeated pairs and pruning zeros."""
        combined: Dict[PathPair, Scalar] = {}
        for pair, value in pairs:
            combined[pair] = combined[pair] + value if pair in combined else value
        return cls(
            tuple(
                (pair, combined[pair])
                for pair in sorted(combined, key=_pair_key)
                if combined[pair]
            )
        )

    @classmethod
    def of(cls, left: Path, right: Path, coefficient: Scalar) -> "TensorElement":
        """Create a single term element."""
        return cls.build([((left, right), coefficient)])

    @property
    def is_zero(self) -> bool:
        """Return true if the element has no terms."""
        return not self.terms

    def scale(self, factor: Scalar) -> "TensorElement":
        """Return the element multiplied by a scalar."""
        return TensorElement.build((pair, v * factor) for pair, v in self.terms)

    def __add__(self, other: "TensorElement") -> "TensorElement":
        """Return the sum of two elements."""
        return TensorElement.build(self.terms + other.terms)

    def __neg__(self) -> "TensorElement":
        """Return the additive inverse."""
        return TensorElement(tuple((pair, -v) for pair, v in self.terms))

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        """Return the difference of two elements."""
        return self + (-other)


TensorMatrix = Tuple[Tuple[TensorElement, ...], ...]


@final
@dataclass(frozen=True)
class BimoduleLevel:
    """One level of the bimodule resolution.

    Args:
        n: the homological degree.
        generators: the (origin, terminus) vertices of every generator.
        differential: the matrix [j][i] into level n - 1, empty at level 0.

    """

    n: int
    generators: Tuple[Block, ...]
    differential: TensorMatrix = ()


@final
@dataclass(frozen=True)
class BimoduleResolution:
    """The minimal projective bimodule resolution of Lambda up to a level."""

    presentation: Presentation
    levels: Tuple[BimoduleLevel, ...]

    @property
    def max_level(self) -> int:
        """Return the highest computed level."""
        return len(self.levels) - 1

    @property
    def field(self) -> FieldSpec:
        """Return the ground field."""
        return self.presentation.field


def build_bimodule_resolution(
    table: ComultTable, data: ResolutionData, n_max: int
) -> BimoduleResolution:
    """Build the differentials from the comultiplication constants.

    Entry [j][i] of level n is the sum over p of c_pj(n, i, 1) a_p (x) e, plus
    (-1)^n times the sum over q of c_jq(n, i, n - 1) e (x) a_q, the idempotents
    being those of the ends of f^(n-1)_j.

    Args:
        table: the comultiplication table, reaching level n_max.
        data: the resolution data.
        n_max: the highest level to build.

    Return:
        The bimodule resolution for levels 0 to n_max.

    """
    if n_max > table.levels:
        raise IndexError(f"the comultiplication table stops at level {table.levels}")
    quiver = data.presentation.quiver
    levels = [BimoduleLevel(0, tuple(e.block for e in data.level(0).elements))]
    for n in range(1, n_max + 1):
        lower = data.level(n - 1).elements
        sign = data.presentation.field.one * (-1 if n % 2 else 1)
        columns: List[List[TensorElement]] = [[] for _ in lower]
        for i in range(data.level(n).count):
            left_split = table.coefficients(n, i, 1)
            right_split = table.coefficients(n, i, n - 1)
            for j, generator in enumerate(lower):
                start = quiver.trivial_path(generator.origin)
                end = quiver.trivial_path(generator.terminus)
                pairs = [
                    ((quiver.arrow_path(p), end), value)
                    for (p, k), value in left_split.items()
                    if k == j
                ]
                pairs.extend(
                    ((start, quiver.arrow_path(q)), value * sign)
                    for (k, q), value in right_split.items()
                    if k == j
                )
                columns[j].append(TensorElement.build(pairs))
        levels.append(
            BimoduleLevel(
                n,
                tuple(e.block for e in data.level(n).elements),
                tuple(tuple(row) for row in columns),
            )
        )
    logger.debug("built %s bimodule levels", n_max)
    return BimoduleResolution(data.presentation, tuple(levels))


def _product(algebra: QuotientAlgebra, first: Path, second: Path) -> PathVector:
    path = compose_paths(first, second)
    if path is None:
        return PathVector(first.length + second.length)
    return algebra.normal_form_path(path)


def _tensor_product(
    algebra: QuotientAlgebra,
    outer: TensorElement,
    inner: TensorElement,
) -> TensorElement:
    """Return outer[left] * inner[left] (x) inner[right] * outer[right]."""
    pairs = []
    for (left, right), value in outer.terms:
        for (left_inner, right_inner), inner_value in inner.terms:
            for new_left, u in _product(algebra, left, left_inner).terms:
                for new_right, v in _product(algebra, right_inner, right).terms:
                    pairs.append(((new_left, new_right), value * inner_value * u * v))
    return TensorElement.build(pairs)


def compose_differentials(
    res: BimoduleResolution, n: int, limits: Limits = Limits()
) -> TensorMatrix:
    """Return the matrix [k][i] of delta^(n-1) after delta^n, for n >= 2."""
    algebra = quotient_algebra(res.presentation, limits)
    upper = res.levels[n].differential
    lower = res.levels[n - 1].differential
    rows: List[List[TensorElement]] = []
    for k in range(len(res.levels[n - 2].generators)):
        row = []
        for i in range(len(res.levels[n].generators)):
            total = TensorElement()
            for j in range(len(res.levels[n - 1].generators)):
                if not upper[j][i].is_zero and not lower[k][j].is_zero:
                    total = total + _tensor_product(algebra, upper[j][i], lower[k][j])
            row.append(total)
        rows.append(row)
    return tuple(tuple(row) for row in rows)


def _multiplied(algebra: QuotientAlgebra, element: TensorElement) -> Dict[Path, Scalar]:
    zero = algebra.presentation.field.zero
    image: Dict[Path, Scalar] = {}
    for (left, right), value in element.terms:
        for path, u in _product(algebra, left, right).terms:
            image[path] = image.get(path, zero) + value * u
    return {path: value for path, value in image.items() if value}


def verify_delta_squared(
    res: BimoduleResolution, limits: Limits = Limits()
) -> CheckResult:
    """Check that the multiplication map after delta^1 vanishes and so do all squares.

    Args:
        res: the bimodule resolution.
        limits: computation limits.

    Return:
        The check outcome, the witness names the first nonzero composite.

    """
    algebra = quotient_algebra(res.presentation, limits)
    if res.max_level >= 1:
        for i in range(len(res.levels[1].generators)):
            composite = TensorElement()
            for row in res.levels[1].differential:
                composite = composite + row[i]
            if _multiplied(algebra, composite):
                return CheckResult("delta-squared", False, f"n=1, i={i}")
    for n in range(2, res.max_level + 1):
        for k, row in enumerate(compose_differentials(res, n, limits)):
            for i, entry in enumerate(row):
                if not entry.is_zero:
                    return CheckResult("delta-squared", False, f"n={n}, k={k}, i={i}")
    return CheckResult("delta-squared", True)


def _one_sided(entry: TensorElement, keep_left: bool) -> PathVector:
    pairs = []
    for (left, right), value in entry.terms:
        if keep_left and right.length == 0:
            pairs.append((left, value))
        elif not keep_left and left.length == 0:
            pairs.append((right, value))
    return PathVector.build(1, pairs)


def tensor_down_right(res: BimoduleResolution, n: int) -> Matrix:
    """Apply Lambda_0 (x)_Lambda to delta^n, keeping the terms with a trivial left."""
    return tuple(
        tuple(_one_sided(entry, False) for entry in row)
        for row in res.levels[n].differential
    )


def tensor_down_left(res: BimoduleResolution, n: int) -> Matrix:
    """Apply (x)_Lambda Lambda_0 to delta^n, keeping the terms with a trivial right."""
    return tuple(
        tuple(_one_sided(entry, True) for entry in row)
        for row in res.levels[n].differential
    )


def _compare_levels(
    name: str,
    res: BimoduleResolution,
    expected: Sequence[Matrix],
    reduced: Sequence[Matrix],
    signs: Sequence[int],
) -> CheckResult:
    for n in range(1, len(reduced)):
        factor = res.field.one * signs[n]
        found = reduced[n]
        if len(found) != len(expected[n]) or any(
            len(found_row) != len(expected_row)
            or any(a.scale(factor) != b for a, b in zip(found_row, expected_row))
            for found_row, expected_row in zip(found, expected[n])
        ):
            return CheckResult(name, False, f"level {n} differs")
    return CheckResult(name, True)


def verify_tensor_down_right(
    res: BimoduleResolution, data: ResolutionData
) -> CheckResult:
    """Check that Lambda_0 (x)_Lambda delta^n equals (-1)^n h^(n-1,n) exactly."""
    levels = range(min(res.max_level, data.max_level) + 1)
    return _compare_levels(
        "tensor-down-right",
        res,
        [data.level(n).h for n in levels],
        [tensor_down_right(res, n) for n in levels],
        [1 if n % 2 == 0 else -1 for n in levels],
    )


def verify_tensor_down_left(
    res: BimoduleResolution, left: LeftResolutionData
) -> CheckResult:
    """Check that delta^n (x)_Lambda Lambda_0 equals the left differential exactly.

    The sign (-1)^n sits on the right acting term, so no sign enters on this side.
    """
    levels = range(min(res.max_level, len(left.differentials) - 1) + 1)
    return _compare_levels(
        "tensor-down-left",
        res,
        [left.differentials[n] for n in levels],
        [tensor_down_left(res, n) for n in levels],
        [1 for _ in levels],
    )


def check_linear_over_enveloping(res: BimoduleResolution) -> CheckResult:
    """Check every differential entry has bidegree (1, 0) or (0, 1) terms.

    Entry [j][i] must also respect the generator idempotents, the left factor
    runs from the origin of generator i to the origin of generator j and the
    right factor from the terminus of generator j to the terminus of generator i.
    """
    for level in res.levels[1:]:
        lower = res.levels[level.n - 1].generators
        for j, row in enumerate(level.differential):
            for i, entry in enumerate(row):
                source, target = level.generators[i], lower[j]
                for (left, right), _ in entry.terms:
                    if left.length + right.length != 1:
                        return CheckResult(
                            "linear", False, f"n={level.n}, j={j}, i={i} degree"
                        )
                    if (left.origin, left.terminus) != (source[0], target[0]) or (
                        right.origin,
                        right.terminus,
                    ) != (target[1], source[1]):
                        return CheckResult(
                            "linear", False, f"n={level.n}, j={j}, i={i} idempotents"
                        )
    return CheckResult("linear", True)


def bimodule_euler_characteristic(
    res: BimoduleResolution, d: int, limits: Limits = Limits()
) -> Dict[Block, int]:
    """Return the alternating sum of the level dimensions in degree d, per block.

    The degree d part of Lambda o (x) t Lambda shifted by n is the sum over a + b =
    d - n of Lambda_a o times t Lambda_b. An exact resolution of Lambda makes the
    result the block dimensions of Lambda_d.
    """
    if res.max_level < d and res.levels[-1].generators:
        raise ValueError(f"the resolution must reach level {d}")
    algebra = quotient_algebra(res.presentation, limits)
    totals: Dict[Block, int] = {}
    for level in res.levels[: d + 1]:
        sign = -1 if level.n % 2 else 1
        for origin, terminus in level.generators:
            for a in range(d - level.n + 1):
                left = algebra.block_dimensions(a)
                right = algebra.block_dimensions(d - level.n - a)
                for (u, o), x in left.items():
                    if o != origin:
                        continue
                    for (t, v), y in right.items():
                        if t == terminus:
                            totals[(u, v)] = totals.get((u, v), 0) + sign * x * y
    return {k: v for k, v in sorted(totals.items()) if v}


def bimodule_homology(
    res: BimoduleResolution, d_max: int, limits: Limits = Limits()
) -> HomologyTable:
    """Compute the homology of the augmented bimodule complex degree by degree.

    The basis of level n in degree d is the triples (i, left, right) of normal
    paths with left ending at the origin of generator i, right starting at its
    terminus and lengths adding to d - n. Level 0 maps onto Lambda by
    multiplication. Levels up to res.max_level - 1 are reported.

    Args:
        res: the bimodule resolution.
        d_max: the highest internal degree.
        limits: computation limits.

    Return:
        The homology dimensions, all zero for an exact resolution.

    """
    n_max = res.max_level - 1
    if n_max < 0:
        raise ValueError("the bimodule resolution must reach level 1")
    algebra = quotient_algebra(res.presentation, limits)
    domain = res.field.domain

    def basis(n: int, d: int) -> List[Tuple[int, Path, Path]]:
        spanning = []
        for i, (origin, terminus) in enumerate(res.levels[n].generators):
            for a in range(d - n + 1):
                for left in algebra.normal_paths(a):
                    if left.terminus != origin:
                        continue
                    for right in algebra.normal_paths(d - n - a):
                        if right.origin == terminus:
                            spanning.append((i, left, right))
        limits.check_paths(len(spanning))
        return spanning

    def differential_rank(n: int, d: int) -> int:
        source = basis(n, d)
        if n == 0:
            target = {p: k for k, p in enumerate(algebra.normal_paths(d))}
        else:
            target = {key: k for k, key in enumerate(basis(n - 1, d))}
        if not source or not target:
            return 0
        rows = []
        for i, left, right in source:
            row = [domain.zero] * len(target)
            if n == 0:
                for path, value in _product(algebra, left, right).terms:
                    row[target[path]] += value
            else:
                generator = TensorElement.of(left, right, domain.one)
                for j, entries in enumerate(res.levels[n].differential):
                    if entries[i].is_zero:
                        continue
                    image = _tensor_product(algebra, generator, entries[i])
                    for (new_left, new_right), value in image.terms:
                        row[target[(j, new_left, new_right)]] += value
            rows.append(row)
        return rank(ScalarMatrix(domain, len(target), tuple(map(tuple, rows))))

    entries: Dict[Tuple[int, int], int] = {}
    for d in range(d_max + 1):
        ranks = [differential_rank(n, d) for n in range(n_max + 2)]
        for n in range(n_max + 1):
            entries[(n, d)] = len(basis(n, d)) - ranks[n] - ranks[n + 1]
    logger.debug("bimodule homology computed up to (%s, %s)", n_max, d_max)
    return HomologyTable(n_max, d_max, entries)
