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

"""Koszul resolutions algebra module tools."""

from functools import lru_cache
from itertools import groupby
from typing import Dict, Iterable, List, Optional, Tuple

from ..algebra import Path, PathVector, Quiver, Scalar, UniformBlock


def compose_paths(p: Path, q: Path) -> Optional[Path]:
    """Concatenate two paths, p then q.

    Args:
        p: the left path.
        q: the right path.

    Return:
        The path pq, or None when the terminus of p is not the origin of q.

    """
    if p.terminus != q.origin:
        return None
    return Path(p.origin, q.terminus, p.arrows + q.arrows)


@lru_cache(maxsize=256)
def _all_paths(quiver: Quiver, length: int) -> Tuple[Path, ...]:
    if length == 0:
        return tuple(quiver.trivial_path(v) for v in range(len(quiver.vertices)))
    extended = []
    for path in _all_paths(quiver, length - 1):
        for arrow in quiver.outgoing(path.terminus):
            extended.append(
                Path(path.origin, quiver.endpoints[arrow][1], path.arrows + (arrow,))
            )
    return tuple(sorted(extended, key=Path.sort_key))


def enumerate_paths(
    quiver: Quiver, d: int, block: Optional[Tuple[int, int]] = None
) -> List[Path]:
    """List the paths of a given length in canonical order.

    Args:
        quiver: the quiver to walk.
        d: the path length.
        block: optional (origin, terminus) vertex indices restricting the paths.

    Return:
        The paths, lexicographic on arrow declaration indices.

    """
    if d < 0:
        raise ValueError("path length must be non negative")
    paths = _all_paths(quiver, d)
    if block is None:
        return list(paths)
    return [p for p in paths if (p.origin, p.terminus) == block]


def multiply(x: PathVector, y: PathVector) -> PathVector:
    """Multiply two vectors in the path algebra, non composable pairs vanish."""
    products = []
    for p, u in x.terms:
        for q, v in y.terms:
            path = compose_paths(p, q)
            if path is not None:
                products.append((path, u * v))
    return PathVector.build(x.degree + y.degree, products)


def uniform_components(x: PathVector) -> List[UniformBlock]:
    """Split a vector into its uniform (origin, terminus) blocks."""

    def block_key(term: Tuple[Path, Scalar]) -> Tuple[int, int]:
        return term[0].origin, term[0].terminus

    blocks = []
    for key, terms in groupby(sorted(x.terms, key=block_key), key=block_key):
        blocks.append(UniformBlock(key[0], key[1], PathVector.build(x.degree, terms)))
    return blocks


def linear_combination(
    degree: int, pairs: Iterable[Tuple[Scalar, PathVector]]
) -> PathVector:
    """Return the sum of the scaled vectors."""
    terms = []
    for factor, vector in pairs:
        terms.extend((path, value * factor) for path, value in vector.terms)
    return PathVector.build(degree, terms)


def reverse_path(path: Path) -> Path:
    """Return the path read backwards, as a path of the opposite quiver."""
    return Path(path.terminus, path.origin, tuple(reversed(path.arrows)))


def reverse_vector(x: PathVector) -> PathVector:
    """Return the vector with every path reversed."""
    return PathVector.build(x.degree, ((reverse_path(p), v) for p, v in x.terms))


def render_path(quiver: Quiver, path: Path) -> str:
    """Return the a*b*c form of a path, e_v for the trivial path at v."""
    if not path.arrows:
        return f"e_{quiver.vertices[path.origin]}"
    return "*".join(quiver.arrows[a].name for a in path.arrows)


def path_counts(quiver: Quiver, d: int) -> Dict[Tuple[int, int], int]:
    """Return the number of length d paths per (origin, terminus) block."""
    counts: Dict[Tuple[int, int], int] = {}
    for path in _all_paths(quiver, d):
        key = (path.origin, path.terminus)
        counts[key] = counts.get(key, 0) + 1
    return counts
