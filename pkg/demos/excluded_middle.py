"""Excluded middle fails for the interior-based negation even in genuine topologies.

The search returns the first countermodel in enumeration order; we print it
as JSON, read it back and evaluate the formula again.

Run: python demos/excluded_middle.py
"""

import json

from tba import search, valid
from tba.serialization import dumps, model_from_json, model_to_json
from tba.topology import classify_element

res = search("|- p | negI p", max_points=2, assumptions=["C:ADDI,EXPN,NORM,IDEM"])
text = dumps(model_to_json(res.model))
print(text)

again = model_from_json(json.loads(text))
print("p | negI p valid after reload:", valid("p | negI p", again))
print("flags of p:", {k: v for k, v in classify_element(again.closure, again.valuation["p"]).items() if v})
