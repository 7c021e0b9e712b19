import pytest
from hypothesis import given

from latt.constructions import (
    Expr,
    boolean,
    build,
    chain,
    evaluate,
    horizontal_sum,
    horizontal_sum_maps,
    n5,
    ordinal_sum,
    ordinal_sum_maps,
    parse,
    product,
)
from latt.errors import ParseError, TrivialSummand
from latt.iso import are_isomorphic
from latt.lattice import dual

from conftest import expressions, nontrivial_lattices


def iso(a, b):
    return are_isomorphic(a, b) is not None


def test_sizes():
    assert ordinal_sum(chain(3), chain(4)).n == 6
    assert horizontal_sum(chain(3), chain(4)).n == 5
    assert product(chain(2), chain(3)).n == 6
    assert boolean(3).n == 8 and boolean(0).n == 1


def test_n5_is_a_horizontal_sum_of_chains():
    assert iso(horizontal_sum(chain(3), chain(4)), n5())


def test_c2_is_neutral_for_horizontal_sums():
    assert horizontal_sum(chain(2), n5()) == n5() or iso(horizontal_sum(chain(2), n5()), n5())


def test_trivial_summand_rejected():
    with pytest.raises(TrivialSummand):
        horizontal_sum(chain(1), chain(3))


def test_left_operand_keeps_indices():
    left, right = ordinal_sum_maps(chain(3), n5())
    assert left == [0, 1, 2] and right[0] == 2
    left, right = horizontal_sum_maps(chain(3), chain(4))
    assert left[:2] == [0, 1]


def test_grammar_precedence():
    assert parse("chain:2 + chain:3 | chain:3 * chain:2") == Expr(
        "osum",
        (Expr("chain", (2,)), Expr("hsum", (Expr("chain", (3,)), Expr("product", (Expr("chain", (3,)), Expr("chain", (2,))))))),
    )
    assert build("chain:2 + (chain:3|chain:3)").n == 5
    assert build("n5").n == 5 and build("mk:3").n == 5 and build("bool:2").n == 4


@pytest.mark.parametrize("bad", ["", "chain:", "chain:3 +", "foo:3", "(chain:3", "chain:0", "chain:3 chain:2"])
def test_grammar_errors(bad):
    with pytest.raises(ParseError):
        parse(bad)


def test_deterministic_indexing():
    assert build("chain:3|chain:4") == build("chain:3|chain:4")


@given(expressions)
def test_expression_text_round_trip(expr):
    assert parse(str(expr)) == expr


@given(expressions, expressions, expressions)
def test_ordinal_sum_associative(a, b, c):
    x, y, z = evaluate(a), evaluate(b), evaluate(c)
    assert iso(ordinal_sum(ordinal_sum(x, y), z), ordinal_sum(x, ordinal_sum(y, z)))


@given(nontrivial_lattices, nontrivial_lattices)
def test_horizontal_sum_commutative(a, b):
    assert iso(horizontal_sum(a, b), horizontal_sum(b, a))


@given(nontrivial_lattices, nontrivial_lattices)
def test_dual_of_ordinal_sum(a, b):
    assert iso(dual(ordinal_sum(a, b)), ordinal_sum(dual(b), dual(a)))


@given(nontrivial_lattices, nontrivial_lattices)
def test_product_size_and_bounds(a, b):
    p = product(a, b)
    assert p.n == a.n * b.n
    assert p.bottom == a.bottom * b.n + b.bottom
    assert p.top == a.top * b.n + b.top
