from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from secdom import formulations as F
from secdom import graphs as G
from secdom.model import (BINARY, CONTINUOUS, LinearModel, ModelError, ModelStats,
                          MpsFormatError, emit_lp, emit_mps, parse_mps, stats)


def three_x():
    m = LinearModel("three")
    for i in (1, 2, 3):
        m.add_binary(f"x_{i}")
    m.set_objective([(f"x_{i}", 1) for i in (1, 2, 3)])
    return m


# -- builder ------------------------------------------------------------------


def test_builder_basics():
    m = three_x()
    assert len(m.vars) == 3
    assert len(m.objective) == 3
    assert m.var("x_2").kind == BINARY
    assert (m.var("x_2").lower, m.var("x_2").upper) == (0, 1)
    assert m.index("x_3") == 2
    assert m.var_names == ["x_1", "x_2", "x_3"]


def test_duplicate_variable_rejected():
    m = three_x()
    with pytest.raises(ModelError):
        m.add_binary("x_1")


def test_unknown_variable_rejected():
    m = three_x()
    with pytest.raises(ModelError):
        m.add_constraint("c", [("y_9_9", 1)], ">=", 1)
    with pytest.raises(ModelError):
        m.set_objective([("y_9_9", 1)])


def test_duplicate_constraint_and_bad_sense_rejected():
    m = three_x()
    m.add_constraint("c", [("x_1", 1)], ">=", 1)
    with pytest.raises(ModelError):
        m.add_constraint("c", [("x_2", 1)], ">=", 1)
    with pytest.raises(ModelError):
        m.add_constraint("d", [("x_2", 1)], "<", 1)


def test_repeated_term_rejected():
    m = three_x()
    with pytest.raises(ModelError):
        m.add_constraint("c", [("x_1", 1), ("x_1", 2)], ">=", 1)


def test_bad_bounds_rejected():
    m = LinearModel()
    with pytest.raises(ModelError):
        m.add_var("y", CONTINUOUS, 2, 1)
    with pytest.raises(ModelError):
        m.add_var("z", CONTINUOUS, float("nan"))


def test_coefficients_are_exact():
    m = three_x()
    con = m.add_constraint("c", [("x_1", 0.5), ("x_2", Fraction(1, 3)), ("x_3", 0)], "<=", 2)
    assert dict(con.terms) == {"x_1": Fraction(1, 2), "x_2": Fraction(1, 3)}


def test_stats_counts():
    assert stats(LinearModel()) == ModelStats(0, 0, 0)
    m = three_x()
    m.add_var("y", CONTINUOUS, 0, 1)
    m.add_constraint("c", [("x_1", 1), ("y", 1)], ">=", 1)
    s = stats(m)
    assert s == ModelStats(3, 1, 1)
    assert s.n_vars == 4
    assert s.n_constraints == len(m.constraints)


def test_equality_ignores_order():
    a = LinearModel()
    a.add_binary("x_1")
    a.add_binary("x_2")
    a.add_constraint("c", [("x_1", 1), ("x_2", 1)], ">=", 1)
    b = LinearModel()
    b.add_binary("x_2")
    b.add_binary("x_1")
    b.add_constraint("c", [("x_2", 1), ("x_1", 1)], ">=", 1)
    assert a == b
    b.add_binary("x_3")
    assert a != b


def test_to_arrays():
    m = three_x()
    m.add_var("y", CONTINUOUS, 0, 1)
    m.add_constraint("ge", [("x_1", 1), ("y", 2)], ">=", 1)
    m.add_constraint("le", [("x_2", 1)], "<=", 0)
    m.add_constraint("eq", [("x_3", 1), ("y", -1)], "=", 0)
    c, A, lo, hi, lb, ub = m.to_arrays()
    assert c.tolist() == [1, 1, 1, 0]
    assert A.toarray().tolist() == [[1, 0, 0, 2], [0, 1, 0, 0], [0, 0, 1, -1]]
    assert lo.tolist() == [1, -np.inf, 0]
    assert hi.tolist() == [np.inf, 0, 0]
    assert lb.tolist() == [0, 0, 0, 0] and ub.tolist() == [1, 1, 1, 1]


# -- LP text ------------------------------------------------------------------


def test_lp_minimal():
    m = LinearModel()
    m.add_binary("x_1")
    m.set_objective([("x_1", 1)])
    text = emit_lp(m)
    assert text.index("Minimize") < text.index("x_1")
    assert text.rstrip().endswith("End")


def test_lp_sections():
    m = LinearModel()
    m.add_binary("x")
    m.add_var("y", CONTINUOUS, 0, 1)
    m.add_constraint("c", [("x", 1), ("y", -2)], ">=", 0)
    text = emit_lp(m)
    bounds = text.split("Bounds")[1].split("Binaries")[0]
    binaries = text.split("Binaries")[1]
    assert "y" in bounds and "x" not in bounds
    assert "x" in binaries
    assert " c: x - 2 y >= 0" in text


def test_lp_improved_p3_has_12_rows():
    text = emit_lp(F.build_improved(G.path_graph(3)))
    body = text.split("Subject To\n")[1].split("Bounds")[0]
    assert len(body.strip().splitlines()) == 12


# -- MPS ----------------------------------------------------------------------


def test_mps_row_types_and_bv():
    m = three_x()
    m.add_constraint("e", [("x_1", 1), ("x_2", 1)], "=", 1)
    m.add_constraint("l", [("x_3", 1)], "<=", 1)
    text = emit_mps(m)
    assert " E e" in text and " L l" in text
    assert " BV BND x_1" in text


def test_mps_column_count_improved_c5():
    text = emit_mps(F.build_improved(G.cycle_graph(5)))
    cols = text.split("COLUMNS\n")[1].split("RHS")[0]
    names = {line.split()[0] for line in cols.strip().splitlines()}
    assert len(names) == 15


def test_mps_one_var_round_trip():
    m = LinearModel("one")
    m.add_binary("x_1")
    m.set_objective([("x_1", 1)])
    assert parse_mps(emit_mps(m)) == m


def test_mps_unused_column_survives():
    m = three_x()
    m.add_var("idle", CONTINUOUS, 0, 4)
    back = parse_mps(emit_mps(m))
    assert back == m
    assert back.var("idle").upper == 4


@pytest.mark.parametrize("text,fragment", [
    ("", "empty"),
    ("NAME a\nROWS\n N obj\nCOLUMNS\n x nowhere 1\nENDATA\n", "unknown row"),
    ("NAME a\nROWS\n N obj\n G c\nCOLUMNS\n x c one\nENDATA\n", "malformed"),
    ("NAME a\nSTUFF\nENDATA\n", "unknown section"),
    ("NAME a\nROWS\n N obj\nRANGES\nENDATA\n", "RANGES"),
    ("NAME a\nROWS\n N obj\nCOLUMNS\n x obj 1\n", "ENDATA"),
])
def test_mps_errors(text, fragment):
    with pytest.raises(MpsFormatError, match=fragment):
        parse_mps(text)


def test_mps_accepts_integer_markers():
    text = """NAME t
ROWS
 N obj
 G c
COLUMNS
 M1 'MARKER' 'INTORG'
 x obj 1 c 1
 M2 'MARKER' 'INTEND'
 y c 1
RHS
 RHS c 1
BOUNDS
 UP BND x 1
ENDATA
"""
    m = parse_mps(text)
    assert m.var("x").kind == BINARY
    assert m.var("y").kind == CONTINUOUS


@st.composite
def models(draw):
    m = LinearModel("rand")
    nv = draw(st.integers(1, 6))
    for i in range(nv):
        if draw(st.booleans()):
            m.add_binary(f"b{i}")
        else:
            lo = draw(st.sampled_from([0, -1, Fraction(1, 2), -float("inf")]))
            up = draw(st.sampled_from([float("inf"), 3, Fraction(7, 4)]))
            if lo == -float("inf") or lo <= up:
                m.add_var(f"c{i}", CONTINUOUS, lo, up)
            else:
                m.add_var(f"c{i}", CONTINUOUS, up, up)
    names = m.var_names
    # decimal text is exact only for terminating fractions
    coef = st.builds(lambda a, d: Fraction(a, d), st.integers(-400, 400),
                     st.sampled_from([1, 2, 4, 5, 8, 10, 16, 25]))
    for r in range(draw(st.integers(0, 5))):
        chosen = draw(st.lists(st.sampled_from(names), unique=True, min_size=1))
        terms = [(v, draw(coef)) for v in chosen]
        m.add_constraint(f"r{r}", terms, draw(st.sampled_from(["<=", ">=", "="])), draw(coef))
    obj = draw(st.lists(st.sampled_from(names), unique=True))
    m.set_objective([(v, draw(coef)) for v in obj])
    return m


@given(models())
def test_mps_round_trip_and_fixed_point(m):
    text = emit_mps(m)
    back = parse_mps(text)
    assert back == m
    assert emit_mps(back) == text


def test_mps_non_terminating_fraction_is_nearest_double():
    m = LinearModel()
    m.add_var("y")
    m.add_constraint("c", [("y", Fraction(1, 3))], ">=", 1)
    back = parse_mps(emit_mps(m))
    assert float(dict(back.constraints[0].terms)["y"]) == 1 / 3


@given(models())
def test_lp_is_deterministic(m):
    assert emit_lp(m) == emit_lp(m)
