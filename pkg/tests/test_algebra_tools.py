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

"""Koszul resolutions algebra module test cases."""

from random import Random

from assertpy import assert_that
from pytest import fixture, mark
from sympy import Matrix as SympyMatrix
from sympy.polys.domains import QQ

from koszulres.algebra import (
    Arrow,
    FieldKind,
    FieldSpec,
    Path,
    PathVector,
    Quiver,
    UniformBlock,
)
from koszulres.algebra import tools


@fixture
def plane():
    return Quiver(("v",), (Arrow("x", "v", "v"), Arrow("y", "v", "v")))


@fixture
def line():
    return Quiver(("1", "2", "3"), (Arrow("a", "1", "2"), Arrow("b", "2", "3")))


@mark.parametrize("text, kind, characteristic", [
    ("Q", FieldKind.RATIONALS, 0),
    ("QQ", FieldKind.RATIONALS, 0),
    ("GF(5)", FieldKind.PRIME_FIELD, 5),
    (" GF( 7 ) ", FieldKind.PRIME_FIELD, 7),
])
def test_field_spec_parse_with_a_valid_field_should_return_the_expected_spec(text, kind, characteristic):
    sut = FieldSpec.parse(text)
    assert_that(sut.kind).is_equal_to(kind)
    assert_that(sut.characteristic).is_equal_to(characteristic)


def test_field_spec_parse_with_an_unknown_field_should_throw_an_error():
    assert_that(FieldSpec.parse).raises(
        ValueError
    ).when_called_with("R").is_equal_to("unknown field 'R', expected Q or GF(p)")


def test_field_spec_with_a_non_prime_characteristic_should_throw_an_error():
    assert_that(FieldSpec).raises(
        ValueError
    ).when_called_with(FieldKind.PRIME_FIELD, 4).is_equal_to("characteristic 4 is not prime")


def test_field_spec_render_over_the_rationals_should_return_reduced_fractions():
    sut = FieldSpec()
    assert_that(sut.render(sut.scalar(2, 4))).is_equal_to("1/2")
    assert_that(sut.render(sut.scalar(-3))).is_equal_to("-3")
    assert_that(str(sut)).is_equal_to("Q")


def test_field_spec_render_over_a_prime_field_should_return_residues():
    sut = FieldSpec(FieldKind.PRIME_FIELD, 5)
    assert_that(sut.render(sut.scalar(-1))).is_equal_to("4")
    assert_that(sut.render(sut.scalar(1, 2))).is_equal_to("3")
    assert_that(str(sut)).is_equal_to("GF(5)")


def test_field_spec_scalar_with_a_vanishing_denominator_should_throw_an_error():
    sut = FieldSpec(FieldKind.PRIME_FIELD, 5)
    assert_that(sut.scalar).raises(
        ValueError
    ).when_called_with(1, 5).is_equal_to("denominator 5 vanishes in GF(5)")


def test_quiver_with_duplicate_vertices_should_throw_an_error():
    assert_that(Quiver).raises(
        ValueError
    ).when_called_with(("v", "v"), ()).is_equal_to("vertex names must be unique")


def test_quiver_with_an_undeclared_endpoint_should_throw_an_error():
    assert_that(Quiver).raises(
        ValueError
    ).when_called_with(("v",), (Arrow("x", "v", "w"),)).is_equal_to("arrow x uses undeclared vertex w")


def test_quiver_opposite_should_reverse_every_arrow_and_keep_the_names(line):
    sut = line.opposite()
    assert_that(sut.arrows).is_equal_to((Arrow("a", "2", "1"), Arrow("b", "3", "2")))
    assert_that(sut.endpoints).is_equal_to(((1, 0), (2, 1)))


def test_compose_paths_with_composable_paths_should_concatenate_the_arrows(line):
    sut = tools.compose_paths(line.arrow_path(0), line.arrow_path(1))
    assert_that(sut).is_equal_to(Path(0, 2, (0, 1)))


def test_compose_paths_with_non_composable_paths_should_return_none(line):
    assert_that(tools.compose_paths(line.arrow_path(1), line.arrow_path(0))).is_none()


def test_compose_paths_with_a_trivial_path_should_act_as_identity(line):
    sut = tools.compose_paths(line.trivial_path(0), line.arrow_path(0))
    assert_that(sut).is_equal_to(line.arrow_path(0))


def test_enumerate_paths_of_the_plane_should_follow_the_arrow_declaration_order(plane):
    sut = tools.enumerate_paths(plane, 2)
    assert_that([tools.render_path(plane, p) for p in sut]).is_equal_to(["x*x", "x*y", "y*x", "y*y"])


def test_enumerate_paths_with_a_block_should_keep_the_block_paths_only(line):
    assert_that(tools.enumerate_paths(line, 1, (1, 2))).is_equal_to([line.arrow_path(1)])
    assert_that(tools.enumerate_paths(line, 3)).is_empty()


def test_enumerate_paths_with_a_negative_length_should_throw_an_error(line):
    assert_that(tools.enumerate_paths).raises(
        ValueError
    ).when_called_with(line, -1).is_equal_to("path length must be non negative")


def test_path_counts_should_count_the_paths_of_every_block(line):
    assert_that(tools.path_counts(line, 0)).is_equal_to({(0, 0): 1, (1, 1): 1, (2, 2): 1})
    assert_that(tools.path_counts(line, 2)).is_equal_to({(0, 2): 1})


def test_path_vector_with_a_zero_coefficient_should_throw_an_error(plane):
    assert_that(PathVector).raises(
        ValueError
    ).when_called_with(1, ((plane.arrow_path(0), 0),)).is_equal_to("zero coefficients are not stored")


def test_path_vector_with_mixed_lengths_should_throw_an_error(plane):
    assert_that(PathVector).raises(
        ValueError
    ).when_called_with(2, ((plane.arrow_path(0), 1),)).is_equal_to("path of length 1 in a degree 2 vector")


def test_path_vector_subtraction_of_itself_should_be_zero(plane):
    x = PathVector.of(plane.arrow_path(0), 3)
    assert_that((x - x).is_zero).is_true()
    assert_that((x - x)).is_equal_to(PathVector(1))


def test_path_vector_build_should_combine_repeated_paths_and_sort_them(plane):
    x, y = plane.arrow_path(0), plane.arrow_path(1)
    sut = PathVector.build(1, [(y, 1), (x, 2), (y, 1)])
    assert_that(sut.terms).is_equal_to(((x, 2), (y, 2)))
    assert_that(sut.coefficient(y)).is_equal_to(2)


def test_multiply_should_compose_the_terms_and_drop_non_composable_pairs(line):
    a = PathVector.of(line.arrow_path(0), 2)
    b = PathVector.of(line.arrow_path(1), 3)
    assert_that(tools.multiply(a, b)).is_equal_to(PathVector.of(Path(0, 2, (0, 1)), 6))
    assert_that(tools.multiply(b, a).is_zero).is_true()


def test_multiply_in_the_plane_should_not_commute(plane):
    x = PathVector.of(plane.arrow_path(0), 1)
    y = PathVector.of(plane.arrow_path(1), 1)
    commutator = tools.multiply(x, y) - tools.multiply(y, x)
    assert_that([tools.render_path(plane, p) for p in commutator.paths]).is_equal_to(["x*y", "y*x"])


def test_uniform_components_should_split_a_vector_by_vertex_block(line):
    a, b = line.arrow_path(0), line.arrow_path(1)
    sut = tools.uniform_components(PathVector.build(1, [(a, 1), (b, -1)]))
    assert_that(sut).is_equal_to([
        UniformBlock(0, 1, PathVector.of(a, 1)),
        UniformBlock(1, 2, PathVector.of(b, -1)),
    ])


def test_uniform_block_with_a_foreign_path_should_throw_an_error(line):
    assert_that(UniformBlock).raises(
        ValueError
    ).when_called_with(0, 2, PathVector.of(line.arrow_path(0), 1)).is_equal_to("vector is not uniform for the block")


def test_reverse_vector_should_read_every_path_backwards(line):
    ab = Path(0, 2, (0, 1))
    sut = tools.reverse_vector(PathVector.of(ab, 1))
    assert_that(sut.paths).is_equal_to((Path(2, 0, (1, 0)),))


def test_render_path_of_a_trivial_path_should_name_the_idempotent(line):
    assert_that(tools.render_path(line, line.trivial_path(1))).is_equal_to("e_2")


def test_linear_combination_should_sum_the_scaled_vectors(plane):
    x = PathVector.of(plane.arrow_path(0), 1)
    y = PathVector.of(plane.arrow_path(1), 1)
    sut = tools.linear_combination(1, [(2, x), (-1, y), (1, x)])
    assert_that(sut).is_equal_to(PathVector.build(1, [(plane.arrow_path(0), 3), (plane.arrow_path(1), -1)]))


@fixture
def cycle():
    return Quiver(
        ("1", "2"),
        (Arrow("a", "1", "2"), Arrow("b", "2", "1"), Arrow("c", "1", "1"), Arrow("d", "1", "2")),
    )


def _random_vector(rng, quiver, degree):
    paths = tools.enumerate_paths(quiver, degree)
    return PathVector.build(degree, [(p, QQ(rng.randint(-2, 2))) for p in paths])


@mark.parametrize("seed", range(8))
def test_multiply_of_random_vectors_should_be_associative(cycle, seed):
    rng = Random(seed)
    x, y, z = (_random_vector(rng, cycle, d) for d in (1, 2, 1))
    left = tools.multiply(tools.multiply(x, y), z)
    right = tools.multiply(x, tools.multiply(y, z))
    assert_that(left).is_equal_to(right)


@mark.parametrize("seed", range(8))
def test_multiply_of_random_vectors_should_distribute_over_addition(cycle, seed):
    rng = Random(seed)
    x, y, z = (_random_vector(rng, cycle, d) for d in (1, 2, 2))
    assert_that(tools.multiply(x, y + z)).is_equal_to(tools.multiply(x, y) + tools.multiply(x, z))
    assert_that(tools.multiply(y + z, x)).is_equal_to(tools.multiply(y, x) + tools.multiply(z, x))


@mark.parametrize("d", range(5))
def test_enumerate_paths_should_count_like_the_adjacency_matrix_power(cycle, d):
    size = len(cycle.vertices)
    adjacency = SympyMatrix.zeros(size, size)
    for origin, terminus in cycle.endpoints:
        adjacency[origin, terminus] += 1
    power = adjacency ** d
    for u in range(size):
        for v in range(size):
            assert_that(tools.enumerate_paths(cycle, d, (u, v))).is_length(int(power[u, v]))
    assert_that(tools.enumerate_paths(cycle, d)).is_length(int(sum(power)))


@mark.parametrize("seed, degree", [(seed, degree) for seed in range(4) for degree in (1, 2, 3)])
def test_uniform_components_of_a_random_vector_should_sum_back_to_it(cycle, seed, degree):
    x = _random_vector(Random(seed), cycle, degree)
    sut = tools.uniform_components(x)
    total = PathVector(degree)
    for block in sut:
        total = total + block.vector
    assert_that(total).is_equal_to(x)
    paths = [path for block in sut for path in block.vector.paths]
    assert_that(paths).does_not_contain_duplicates()
    assert_that([block.block for block in sut]).is_sorted()
