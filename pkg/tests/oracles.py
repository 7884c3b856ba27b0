"""Reference implementations over Python sets, written from the definitions alone.

Nothing here imports the package: elements are frozensets of points and
operators are dicts from frozensets to frozensets.  Tests compare the
vectorized code against these.
"""

from itertools import chain, combinations, product


def powerset(n):
    pts = range(n)
    return [frozenset(c) for c in chain.from_iterable(combinations(pts, k) for k in range(n + 1))]


def to_mask(s):
    return sum(1 << p for p in s)


def from_mask(m, n):
    return frozenset(p for p in range(n) if m >> p & 1)


def op_from_table(table, n):
    return {from_mask(i, n): from_mask(v, n) for i, v in enumerate(table)}


def op_to_table(f, n):
    return [to_mask(f[from_mask(i, n)]) for i in range(1 << n)]


def universe(n):
    return frozenset(range(n))


# -- transforms -----------------------------------------------------------------------


def dual(f, n):
    u = universe(n)
    return {a: u - f[u - a] for a in f}


def compl(f, n):
    u = universe(n)
    return {a: u - f[a] for a in f}


def dual_compl(f, n):
    u = universe(n)
    return {a: f[u - a] for a in f}


def fixpoint(f, n):
    u = universe(n)
    # points where f(A) and A agree
    return {a: u - (f[a] ^ a) for a in f}


def fixpoint_compl(f, n):
    return {a: f[a] ^ a for a in f}


# -- conditions ---------------------------------------------------------------------------


def _pairs(n):
    return list(product(powerset(n), repeat=2))


def _families(n):
    els = powerset(n)
    return [
        [e for k, e in enumerate(els) if bits >> k & 1]
        for bits in range(1 << len(els))
    ]


def _sup(s):
    out = frozenset()
    for x in s:
        out |= x
    return out


def _inf(s, n):
    out = universe(n)
    for x in s:
        out &= x
    return out


def _le(x, y):
    return x <= y


def _le_in(x, y, u):
    return (x & u) <= (y & u)


def _le_out(x, y, u, n):
    out = universe(n) - u
    return (x & out) <= (y & out)


def condition(name, f, n):
    """Whether the condition holds, from its textual definition."""
    u = universe(n)
    els = powerset(n)
    P = _pairs(n)
    if name in COMPOSITE:
        return all(condition(p, f, n) for p in COMPOSITE[name])
    finitary = {
        "MONO": lambda: all(f[a] <= f[b] for a, b in P if a <= b),
        "ANTI": lambda: all(f[b] <= f[a] for a, b in P if a <= b),
        "ADDI_a": lambda: all(f[a | b] <= f[a] | f[b] for a, b in P),
        "ADDI_b": lambda: all(f[a] | f[b] <= f[a | b] for a, b in P),
        "MULT_a": lambda: all(f[a & b] <= f[a] & f[b] for a, b in P),
        "MULT_b": lambda: all(f[a] & f[b] <= f[a & b] for a, b in P),
        "EXPN": lambda: all(a <= f[a] for a in els),
        "CNTR": lambda: all(f[a] <= a for a in els),
        "NORM": lambda: f[frozenset()] == frozenset(),
        "DNRM": lambda: f[u] == u,
        "IDEM_a": lambda: all(f[f[a]] <= f[a] for a in els),
        "IDEM_b": lambda: all(f[a] <= f[f[a]] for a in els),
        "nADDI_a": lambda: all(f[a] & f[b] <= f[a | b] for a, b in P),
        "nADDI_b": lambda: all(f[a | b] <= f[a] & f[b] for a, b in P),
        "nMULT_a": lambda: all(f[a] | f[b] <= f[a & b] for a, b in P),
        "nMULT_b": lambda: all(f[a & b] <= f[a] | f[b] for a, b in P),
        "nEXPN": lambda: all(f[a] <= u - a for a in els),
        "nCNTR": lambda: all(u - a <= f[a] for a in els),
        "nNORM": lambda: f[frozenset()] == u,
        "nDNRM": lambda: f[u] == frozenset(),
        "nIDEM_a": lambda: all(f[a] <= f[u - f[a]] for a in els),
        "nIDEM_b": lambda: all(f[u - f[a]] <= f[a] for a in els),
        "ADDIr_a": lambda: all(_le_out(f[a | b], f[a] | f[b], a | b, n) for a, b in P),
        "ADDIr_b": lambda: all(_le_out(f[a] | f[b], f[a | b], a | b, n) for a, b in P),
        "MULTr_a": lambda: all(_le_in(f[a & b], f[a] & f[b], a & b) for a, b in P),
        "MULTr_b": lambda: all(_le_in(f[a] & f[b], f[a & b], a & b) for a, b in P),
        "IDEMr_a": lambda: all(_le_out(f[a | f[a]], f[a], a, n) for a in els),
        "IDEMr_b": lambda: all(_le_in(f[a], f[a & f[a]], a) for a in els),
        "nADDIr_a": lambda: all(_le_out(f[a] & f[b], f[a | b], a | b, n) for a, b in P),
        "nADDIr_b": lambda: all(_le_out(f[a | b], f[a] & f[b], a | b, n) for a, b in P),
        "nMULTr_a": lambda: all(_le_in(f[a] | f[b], f[a & b], a & b) for a, b in P),
        "nMULTr_b": lambda: all(_le_in(f[a & b], f[a] | f[b], a & b) for a, b in P),
        "nIDEMr_a": lambda: all(_le_out(f[a], f[a | (u - f[a])], a, n) for a in els),
        "nIDEMr_b": lambda: all(_le_in(f[a & (u - f[a])], f[a], a) for a in els),
        "MONOw1": lambda: all(f[a] <= b | f[b] for a, b in P if a <= b),
        "MONOw2": lambda: all(a & f[a] <= f[b] for a, b in P if a <= b),
        "ANTIw1": lambda: all(f[b] <= b | f[a] for a, b in P if a <= b),
        "ANTIw2": lambda: all(a & f[b] <= f[a] for a, b in P if a <= b),
    }
    if name in finitary:
        return finitary[name]()
    F = _families(n)

    def fam(pred):
        return all(pred(_sup(s), _inf(s, n), _sup(f[x] for x in s), _inf((f[x] for x in s), n)) for s in F)

    infinitary = {
        "iADDI_a": lambda: fam(lambda J, M, IJ, IM: f[J] <= IJ),
        "iADDI_b": lambda: fam(lambda J, M, IJ, IM: IJ <= f[J]),
        "iMULT_a": lambda: fam(lambda J, M, IJ, IM: f[M] <= IM),
        "iMULT_b": lambda: fam(lambda J, M, IJ, IM: IM <= f[M]),
        "inADDI_a": lambda: fam(lambda J, M, IJ, IM: IM <= f[J]),
        "inADDI_b": lambda: fam(lambda J, M, IJ, IM: f[J] <= IM),
        "inMULT_a": lambda: fam(lambda J, M, IJ, IM: IJ <= f[M]),
        "inMULT_b": lambda: fam(lambda J, M, IJ, IM: f[M] <= IJ),
        "iADDIr_a": lambda: fam(lambda J, M, IJ, IM: _le_out(f[J], IJ, J, n)),
        "iADDIr_b": lambda: fam(lambda J, M, IJ, IM: _le_out(IJ, f[J], J, n)),
        "iMULTr_a": lambda: fam(lambda J, M, IJ, IM: _le_in(f[M], IM, M)),
        "iMULTr_b": lambda: fam(lambda J, M, IJ, IM: _le_in(IM, f[M], M)),
        "inADDIr_a": lambda: fam(lambda J, M, IJ, IM: _le_out(IM, f[J], J, n)),
        "inADDIr_b": lambda: fam(lambda J, M, IJ, IM: _le_out(f[J], IM, J, n)),
        "inMULTr_a": lambda: fam(lambda J, M, IJ, IM: _le_in(IJ, f[M], M)),
        "inMULTr_b": lambda: fam(lambda J, M, IJ, IM: _le_in(f[M], IJ, M)),
    }
    return infinitary[name]()


COMPOSITE = {
    base: (base + "_a", base + "_b")
    for base in ("ADDI", "MULT", "IDEM", "iADDI", "iMULT", "nADDI", "nMULT", "nIDEM",
                 "inADDI", "inMULT", "ADDIr", "MULTr", "IDEMr", "iADDIr", "iMULTr",
                 "nADDIr", "nMULTr", "nIDEMr", "inADDIr", "inMULTr")
}

ATOMIC = (
    "MONO", "ANTI", "ADDI_a", "ADDI_b", "MULT_a", "MULT_b", "EXPN", "CNTR", "NORM", "DNRM",
    "IDEM_a", "IDEM_b", "nADDI_a", "nADDI_b", "nMULT_a", "nMULT_b", "nEXPN", "nCNTR",
    "nNORM", "nDNRM", "nIDEM_a", "nIDEM_b", "ADDIr_a", "ADDIr_b", "MULTr_a", "MULTr_b",
    "IDEMr_a", "IDEMr_b", "nADDIr_a", "nADDIr_b", "nMULTr_a", "nMULTr_b", "nIDEMr_a",
    "nIDEMr_b", "MONOw1", "MONOw2", "ANTIw1", "ANTIw2", "iADDI_a", "iADDI_b", "iMULT_a",
    "iMULT_b", "inADDI_a", "inADDI_b", "inMULT_a", "inMULT_b", "iADDIr_a", "iADDIr_b",
    "iMULTr_a", "iMULTr_b", "inADDIr_a", "inADDIr_b", "inMULTr_a", "inMULTr_b",
)


# -- topology -------------------------------------------------------------------------------


def closure_of_edges(edges, n):
    """C[R](A): points with some successor in A."""
    return {a: frozenset(w for w in range(n) if any((w, v) in edges for v in a)) for a in powerset(n)}


def topologies(n):
    """All topologies as sets of open sets, by brute force over families."""
    els = powerset(n)
    out = []
    for bits in range(1 << len(els)):
        opens = {e for k, e in enumerate(els) if bits >> k & 1}
        if frozenset() not in opens or universe(n) not in opens:
            continue
        if all(a | b in opens and a & b in opens for a in opens for b in opens):
            out.append(opens)
    return out


def closure_of_topology(opens, n):
    u = universe(n)
    closed = [u - o for o in opens]
    return {a: _inf([c for c in closed if a <= c], n) for a in powerset(n)}


def kuratowski_monoid_size(c, n):
    u = universe(n)
    neg = {a: u - a for a in c}
    gens = [c, neg]
    key = lambda g: tuple(sorted((to_mask(k), to_mask(v)) for k, v in g.items()))  # noqa: E731
    seen = {key(g): g for g in gens}
    frontier = list(gens)
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                k = {a: g[h[a]] for a in h}
                if key(k) not in seen:
                    seen[key(k)] = k
                    nxt.append(k)
        frontier = nxt
    return len(seen)


# -- formulas ---------------------------------------------------------------------------------


def eval_formula(f, c, n, val):
    """Evaluate a tuple-encoded formula: ('var', p) | ('T',) | ('F',) | (op, arg) | (op, l, r)."""
    u = universe(n)
    i = dual(c, n)
    tag = f[0]
    if tag == "var":
        return val[f[1]]
    if tag == "T":
        return u
    if tag == "F":
        return frozenset()
    if len(f) == 2:
        x = eval_formula(f[1], c, n, val)
        unary = {
            "-": lambda: u - x,
            "negC": lambda: c[u - x],
            "negI": lambda: i[u - x],
            "negIC": lambda: i[c[u - x]],
            "negCI": lambda: c[i[u - x]],
            "cons": lambda: u - (i[x] ^ x),
            "det": lambda: u - (c[x] ^ x),
            "undet": lambda: c[x] ^ x,
            "box": lambda: i[x],
            "int": lambda: i[x],
            "dia": lambda: c[x],
            "cl": lambda: c[x],
            "ext": lambda: u - c[x],
            "bdr": lambda: x & c[u - x],
            "frt": lambda: c[x] & c[u - x],
        }
        return unary[tag]()
    a = eval_formula(f[1], c, n, val)
    b = eval_formula(f[2], c, n, val)
    return {
        "&": a & b,
        "|": a | b,
        "->": (u - a) | b,
        "<->": u - (a ^ b),
        "\\": a - b,
        "^": a ^ b,
    }[tag]


def to_text(f):
    """Fully parenthesized concrete syntax for a tuple-encoded formula."""
    tag = f[0]
    if tag == "var":
        return f[1]
    if tag in ("T", "F"):
        return tag
    if len(f) == 2:
        return f"{tag} ({to_text(f[1])})"
    return f"({to_text(f[1])}) {tag} ({to_text(f[2])})"
