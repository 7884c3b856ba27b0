"""Hypothesis strategies shared by the formula and logic tests."""

from hypothesis import strategies as st

VARS = ("p", "q", "r")
UNARY = ("-", "negC", "negI", "negIC", "negCI", "cons", "det", "undet", "box", "dia",
         "cl", "int", "ext", "bdr", "frt")
BINARY = ("&", "|", "->", "<->", "\\", "^")

leaves = st.one_of(st.sampled_from([("var", v) for v in VARS]), st.sampled_from([("T",), ("F",)]))

formulas = st.recursive(
    leaves,
    lambda sub: st.one_of(
        st.tuples(st.sampled_from(UNARY), sub),
        st.tuples(st.sampled_from(BINARY), sub, sub),
    ),
    max_leaves=8,
)


def tables(n):
    return st.lists(st.integers(0, (1 << n) - 1), min_size=1 << n, max_size=1 << n)
