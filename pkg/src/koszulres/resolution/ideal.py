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

"""Koszul resolutions ideal and quotient module.

Normal forms are computed degree by degree. A path of length d reduces through its
length d-1 prefix, so only the words w*a with w normal are candidates in degree d,
and I_d = I_{d-1}*B_1 + sum_k B_{d-k}*R_k leaves the relation images to clear.
The normal paths of degree d are the candidates outside the pivots of those
images, which is the complement of the reduced row echelon pivots of I_d in B_d.
"""

from dataclasses import replace
from functools import lru_cache
from logging import getLogger
from typing import Dict, List, Optional, Tuple

from ..algebra import Path, PathVector
from ..algebra.tools import compose_paths, enumerate_paths, path_counts
from ..linalg import Subspace
from ..presentation import Presentation
from . import Limits

logger = getLogger(__name__)

Block = Tuple[int, int]


class QuotientAlgebra:
    """Degree-wise normal forms and bases of kQ/I.

    Args:
        presentation: the algebra presentation.
        limits: computation limits applied to every candidate basis.

    """

    def __init__(self, presentation: Presentation, limits: Limits = Limits()) -> None:
        """Initialize the algebra, degrees are built on demand."""
        self.presentation = presentation
        self.limits = limits
        self._domain = presentation.field.domain
        self._normal: Dict[int, Tuple[Path, ...]] = {}
        self._reducers: Dict[int, Dict[Block, Subspace]] = {}
        self._forms: Dict[Path, PathVector] = {}

    def _build(self, d: int) -> None:
        if d in self._normal:
            return
        quiver = self.presentation.quiver
        if d <= 1:
            for k in range(d + 1):
                self._normal.setdefault(k, tuple(enumerate_paths(quiver, k)))
                self._reducers.setdefault(k, {})
            return
        self._build(d - 1)
        candidates: Dict[Block, List[Path]] = {}
        for word in self._normal[d - 1]:
            for arrow in quiver.outgoing(word.terminus):
                path = compose_paths(word, quiver.arrow_path(arrow))
                assert path is not None
                candidates.setdefault((path.origin, path.terminus), []).append(path)
        images: Dict[Block, List[PathVector]] = {}
        for relation in self.presentation.relations:
            if relation.degree > d:
                continue
            start = relation.paths[0].origin
            for prefix in self._normal[d - relation.degree]:
                if prefix.terminus != start:
                    continue
                image = PathVector(d)
                for path, value in relation.terms:
                    product = compose_paths(prefix, path)
                    assert product is not None
                    image = image + self._candidate_form(product).scale(value)
                if not image.is_zero:
                    key = (prefix.origin, relation.paths[0].terminus)
                    images.setdefault(key, []).append(image)
        reducers: Dict[Block, Subspace] = {}
        normal: List[Path] = []
        for block in sorted(candidates):
            ambient = sorted(candidates[block], key=Path.sort_key)
            self.limits.check_paths(len(ambient))
            reducer = Subspace.from_vectors(
                self._domain, ambient, images.get(block, [])
            )
            reducers[block] = reducer
            pivots = set(reducer.pivots)
            normal.extend(p for i, p in enumerate(ambient) if i not in pivots)
        self._reducers[d] = reducers
        self._normal[d] = tuple(sorted(normal, key=Path.sort_key))
        logger.debug("degree %s has %s normal paths", d, len(self._normal[d]))

    def _candidate_form(self, path: Path) -> PathVector:
        """Rewrite a path as a combination of normal prefixes times its last arrow."""
        quiver = self.presentation.quiver
        last = quiver.arrow_path(path.arrows[-1])
        prefix = Path(path.origin, last.origin, path.arrows[:-1])
        pairs = []
        for word, value in self.normal_form_path(prefix).terms:
            product = compose_paths(word, last)
            assert product is not None
            pairs.append((product, value))
        return PathVector.build(path.length, pairs)

    def normal_paths(self, d: int, block: Optional[Block] = None) -> Tuple[Path, ...]:
        """Return the normal paths of length d, optionally of one block."""
        self._build(d)
        if block is None:
            return self._normal[d]
        return tuple(p for p in self._normal[d] if (p.origin, p.terminus) == block)

    def dimension(self, d: int, block: Optional[Block] = None) -> int:
        """Return the dimension of Lambda_d, optionally of one block."""
        return len(self.normal_paths(d, block))

    def block_dimensions(self, d: int) -> Dict[Block, int]:
        """Return the nonzero block dimensions of Lambda_d."""
        dimensions: Dict[Block, int] = {}
        for path in self.normal_paths(d):
            key = (path.origin, path.terminus)
            dimensions[key] = dimensions.get(key, 0) + 1
        return dimensions

    def normal_form_path(self, path: Path) -> PathVector:
        """Return the normal form of a single path."""
        if path.length <= 1:
            return PathVector.of(path, self._domain.one)
        if path not in self._forms:
            self._build(path.length)
            form = self._candidate_form(path)
            if not form.is_zero:
                reducer = self._reducers[path.length][(path.origin, path.terminus)]
                form = reducer.to_vector(reducer.reduce(reducer.coordinates(form)))
            self._forms[path] = form
        return self._forms[path]

    def normal_form(self, vector: PathVector) -> PathVector:
        """Return the normal form of a homogeneous vector modulo I."""
        result = PathVector(vector.degree)
        for path, value in vector.terms:
            result = result + self.normal_form_path(path).scale(value)
        return result

    def ideal_component(self, d: int) -> Dict[Block, Subspace]:
        """Return I_d as a reduced row echelon subspace of every B_d block."""
        quiver = self.presentation.quiver
        components: Dict[Block, Subspace] = {}
        for block in sorted(path_counts(quiver, d)):
            ambient = enumerate_paths(quiver, d, block)
            self.limits.check_paths(len(ambient))
            normal = set(self.normal_paths(d, block))
            rows = [
                PathVector.of(path, self._domain.one) - self.normal_form_path(path)
                for path in ambient
                if path not in normal
            ]
            components[block] = Subspace.from_vectors(self._domain, ambient, rows)
        return components


@lru_cache(maxsize=64)
def quotient_algebra(
    presentation: Presentation, limits: Limits = Limits()
) -> QuotientAlgebra:
    """Return the shared quotient algebra of a presentation."""
    return QuotientAlgebra(presentation, limits)


def ideal_degree_component(
    presentation: Presentation, d: int, limits: Limits = Limits()
) -> Dict[Block, Subspace]:
    """Return the degree d component of the ideal, per vertex block.

    Args:
        presentation: the algebra presentation.
        d: the degree, 2 or more.
        limits: computation limits.

    Return:
        The canonical subspace of I_d inside every (origin, terminus) block of B_d.

    """
    if d < 2:
        raise ValueError("ideal components start in degree 2")
    return quotient_algebra(presentation, limits).ideal_component(d)


def lambda_dimension(
    presentation: Presentation, d: int, limits: Limits = Limits()
) -> int:
    """Return dim Lambda_d = |B_d| - dim I_d."""
    if d < 0:
        raise ValueError("degree must be non negative")
    return quotient_algebra(presentation, limits).dimension(d)


def lambda_block_dimensions(
    presentation: Presentation, d: int, limits: Limits = Limits()
) -> Dict[Block, int]:
    """Return the per block dimensions of Lambda_d."""
    return quotient_algebra(presentation, limits).block_dimensions(d)


def minimal_generator_degrees(
    presentation: Presentation, limits: Limits = Limits()
) -> Dict[int, int]:
    """Count the minimal generators of the ideal in every degree.

    The degree k count is the rank of the degree k relations modulo the ideal
    generated by the relations of lower degree.

    Args:
        presentation: the algebra presentation.
        limits: computation limits.

    Return:
        The degrees holding minimal generators, mapped to their count.

    """
    counts: Dict[int, int] = {}
    domain = presentation.field.domain
    for degree in presentation.relation_degrees:
        lower = replace(
            presentation,
            relations=tuple(r for r in presentation.relations if r.degree < degree),
        )
        algebra = quotient_algebra(lower, limits)
        reduced = [
            algebra.normal_form(r) for r in presentation.relations_of_degree(degree)
        ]
        support = sorted({p for v in reduced for p in v.paths}, key=Path.sort_key)
        rank = Subspace.from_vectors(domain, support, reduced).dimension
        if rank:
            counts[degree] = rank
    return counts
