"""Paraconsistency in a two-point space, and how the consistency operator tames it.

Run: python demos/gentle_explosion.py
"""

from tba import Model, Operator, consequence, eval_formula, search

# Indiscrete closure: only the empty set and the whole space are closed.
model = Model(2, Operator(2, [0, 3, 3, 3]), "closure", {"p": [0]})

print("p & negC p      =", list(eval_formula("p & negC p", model).points))
print("p, negC p |- F  :", consequence("p, negC p |- F", model))
print("cons p          =", list(eval_formula("cons p", model).points))
print("cons p, p, negC p |- F :", consequence("cons p, p, negC p |- F", model))

# No model on at most two points breaks the guarded version.
res = search("cons p, p, negC p |- F", max_points=2)
print(f"exhaustive search over {res.candidates} closures:", res.status)
