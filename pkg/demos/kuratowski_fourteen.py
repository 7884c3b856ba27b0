"""How many distinct operators closure and complement generate, over all small topologies.

Run: python demos/kuratowski_fourteen.py
"""

from collections import Counter

from tba import Operator, finite_topologies
from tba.topology import monoid_closure

for n in range(1, 5):
    sizes = Counter(len(monoid_closure([c, Operator.complement(n)])) for c in finite_topologies(n))
    print(f"{n} points, {sum(sizes.values())} topologies:", dict(sorted(sizes.items())))
