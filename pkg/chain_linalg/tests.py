# chain_linalg/tests.py
from fractions import Fraction

import pytest
from django.test import override_settings

from chain_linalg.models import FormSpace, LinearMap, WindowModule, WindowSpec
from chain_linalg.utils import BlockDecomposition, ModuleAlgebra, SmithNormalForm, snf
from core.exceptions import ContextMismatch, ResourceError, ValidationError, WindowTooSmall
from drw_forms.models import make_form
from drw_forms.utils import FormArithmetic
from witt_core.models import PrimeContext

P2N1 = PrimeContext(2, 1)
P2N2 = PrimeContext(2, 2)


@pytest.fixture
def space():
    """q=1, weights -1, -1/2, 0, 1/2, 1 over W_2"""
    return FormSpace(P2N2, WindowSpec(1, -1, 1))


def _times_two(space):
    return LinearMap(space, space, lambda x: FormArithmetic.scale(x, 2), name='times_two')


# windows

def test_window_parse():
    window = WindowSpec.parse(1, '-3/2:4')
    assert (window.q, window.min_exp, window.max_exp) == (1, Fraction(-3, 2), 4)


@pytest.mark.parametrize('text', ['1:-1', '3', 'a:b'])
def test_window_parse_rejects(text):
    with pytest.raises(ValidationError):
        WindowSpec.parse(0, text)


def test_window_dilate_and_widen():
    window = WindowSpec(0, -1, 2)
    assert window.dilate(3) == WindowSpec(0, -3, 6)
    assert window.widen(1) == WindowSpec(0, -2, 3)
    assert window.with_degree(1).q == 1
    assert window.covers(-1, 0) and not window.covers(-2, 0)


def test_window_keys_follow_weight_order():
    assert WindowSpec(1, -1, 1).keys(P2N1) == [(0, -1), (0, 0), (0, 1)]
    assert len(WindowSpec(1, -1, 1).keys(P2N2)) == 5


# coordinate spaces

def test_column_scales_deep_coordinates(space):
    x = make_form(P2N2, 1, {(1, 1): 1, (0, -1): 3})
    column = space.column(x)
    assert column == {space.index[(0, 1, 1)]: 2, space.index[(0, 0, -1)]: 3}
    assert space.form(column) == x


def test_column_outside_window(space):
    x = make_form(P2N2, 1, {(0, 2): 1, (0, 0): 1})
    with pytest.raises(WindowTooSmall):
        space.column(x)
    assert space.column(x, clip=True) == {space.index[(0, 0, 0)]: 1}


def test_column_context_mismatch(space):
    with pytest.raises(ContextMismatch):
        space.column(make_form(P2N1, 1, {(0, 0): 1}))
    with pytest.raises(ContextMismatch):
        space.column(make_form(P2N2, 0, {(0, 0): 1}))


def test_weights_of_rows(space):
    assert [space.weight_of(row) for row in range(len(space))] == [
        -1, Fraction(-1, 2), 0, Fraction(1, 2), 1]


@override_settings(DRWLAB_MAX_COORDINATES=3)
def test_coordinate_budget():
    with pytest.raises(ResourceError):
        FormSpace(P2N2, WindowSpec(0, -1, 1))


# window modules

def test_full_and_zero_lengths(space):
    assert WindowModule.full(space).length == 8
    assert WindowModule.zero(space).length == 0


def test_membership(space):
    row = space.index[(0, 0, 0)]
    module = WindowModule(space, [{row: 2}])
    assert module.length == 1
    assert module.contains({row: 2})
    assert not module.contains({row: 1})
    assert module.issubset(WindowModule.full(space))
    assert not WindowModule.full(space).issubset(module)


def test_generators_are_reduced(space):
    module = WindowModule(space, [{0: 4}, {}, {1: 6}])
    assert module.generators == ({1: 2},)


def test_intersection(space):
    a, b = space.index[(0, 0, 0)], space.index[(0, 0, 1)]
    left = WindowModule(space, [{a: 1}, {b: 2}])
    right = WindowModule(space, [{a: 2}, {b: 1}])
    meet = left.intersection(right)
    assert meet.length == 2
    assert meet.equals(WindowModule(space, [{a: 2}, {b: 2}]))
    assert WindowModule(space, [{a: 1}]).intersection(WindowModule(space, [{b: 1}])).length == 0


def test_quotient_length(space):
    sub = WindowModule(space, [{space.index[(0, 0, 0)]: 2}])
    assert WindowModule.full(space).quotient_length(sub) == 7


def test_kernel_and_image(space):
    full = WindowModule.full(space)
    multiply = _times_two(space)
    kernel = full.kernel(multiply)
    image = full.image(multiply)
    assert kernel.length == 5
    assert image.length == 3
    assert kernel.length + image.length == full.length


def test_preimage_of_submodule(space):
    full = WindowModule.full(space)
    target = WindowModule(space, [{space.index[(0, 0, 0)]: 2}])
    preimage = full.preimage(_times_two(space), target)
    assert preimage.length == 6


def test_ambient_mismatch(space):
    other = FormSpace(P2N2, WindowSpec(1, 0, 1))
    with pytest.raises(ContextMismatch):
        WindowModule.full(space) + WindowModule.full(other)


def test_clip_and_embed(space):
    narrow = FormSpace(P2N2, WindowSpec(1, 0, 1))
    module = WindowModule.full(space).clip(narrow)
    assert module.equals(WindowModule.full(narrow))
    assert WindowModule.full(narrow).embed(space).length == 5


def test_witness_outside(space):
    row = space.index[(0, 0, 0)]
    assert WindowModule(space, [{row: 1}]).witness_outside(WindowModule(space, [{row: 2}])) is not None
    assert WindowModule(space, [{row: 2}]).witness_outside(WindowModule(space, [{row: 1}])) is None


# Smith normal form

def test_smith_divisors():
    smith = SmithNormalForm.compute([[2, 0], [0, 1]], 2, 2)
    assert smith.divisors == (1, 2)
    assert smith.rank == 2


def test_smith_transforms_diagonalize():
    matrix = [[2, 4, 1], [6, 3, 3]]
    smith = SmithNormalForm.compute(matrix, 3, 2)
    modulus = 9
    product = [[sum(smith.left[i][k] * matrix[k][j] for k in range(2)) % modulus for j in range(3)]
               for i in range(2)]
    product = [[sum(product[i][k] * smith.right[k][j] for k in range(3)) % modulus for j in range(3)]
               for i in range(2)]
    for i in range(2):
        for j in range(3):
            expected = smith.divisors[i] if i == j and i < smith.rank else 0
            assert product[i][j] == expected


def test_snf_with_mixed_row_moduli():
    assert snf([[1]], [2], 2).divisors == (1,)
    assert snf([[1], [1]], [4, 2], 2).divisors == (1,)
    assert snf([[2, 0], [0, 1]], [4, 2], 2).divisors == (2, 2)
    with pytest.raises(ValidationError):
        snf([[1]], [2, 4], 2)


def test_blocks():
    blocks, empty = BlockDecomposition.blocks([{0: 1}, {1: 1}, {0: 1, 2: 1}, {}])
    assert blocks == [([0, 2], [0, 2]), ([1], [1])]
    assert empty == [3]


def test_relations_vanish():
    columns = [{0: 1, 1: 2}, {0: 3, 1: 2}, {}, {2: 2}]
    relations = ModuleAlgebra.relations(columns, 2, 2)
    assert {3: 1} not in relations
    assert {2: 1} in relations
    for relation in relations:
        total = {}
        for index, coeff in relation.items():
            for row, value in columns[index].items():
                total[row] = (total.get(row, 0) + coeff * value) % 4
        assert not any(total.values())
    assert any(set(relation) == {0, 1} for relation in relations)
    assert {3: 2} in relations
