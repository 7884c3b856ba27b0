"""Formulas, sequents, a recursive-descent parser and a pretty-printer.

Grammar (loosest binding first)::

    formula   := iff
    iff       := impl ('<->' impl)*          right associative
    impl      := or ('->' impl)?             right associative
    or        := and ('|' and)*
    and       := unary (('&' | '\\' | '^') unary)*
    unary     := PREFIX unary | quant | atom
    quant     := ('forall' | 'exists') restr? var '.' formula
               | ('Forall' | 'Exists') restr? ivar '.' formula
    restr     := '[' ('open' | 'closed' | NAME) ']' | '{' NAME '}'
    atom      := 'T' | 'F' | var | PRED '(' ivar ')' | '(' formula ')'
    sequent   := list? ('|-' | '|-g') list?

``\\`` is set difference and ``^`` symmetric difference; both bind like ``&``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import FormulaSyntaxError

UNARY_OPS = (
    "-", "negC", "negI", "negIC", "negCI", "cons", "det", "undet",
    "box", "dia", "cl", "int", "ext", "bdr", "frt",
)  # fmt: skip
BINARY_OPS = ("&", "|", "->", "<->", "\\", "^")
_KEYWORDS = set(UNARY_OPS) | {"forall", "exists", "T", "F"}

_PREC = {"<->": 1, "->": 2, "|": 3, "&": 4, "\\": 4, "^": 4}


class Formula:
    """Base class; subclasses are frozen dataclasses."""

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Var(Formula):
    name: str


@dataclass(frozen=True)
class Const(Formula):
    value: bool


TOP = Const(True)
BOT = Const(False)


@dataclass(frozen=True)
class Unary(Formula):
    op: str
    arg: Formula


@dataclass(frozen=True)
class Binary(Formula):
    op: str
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Restriction:
    """``kind`` is one of open, closed, domain (a named family), delta (a named domain function)."""

    kind: str
    name: str = ""


@dataclass(frozen=True)
class Quant(Formula):
    """Propositional quantifier (``individual=False``) or individual quantifier."""

    kind: str  # "forall" | "exists"
    var: str
    body: Formula
    restriction: Restriction | None = None
    individual: bool = False


@dataclass(frozen=True)
class Pred(Formula):
    name: str
    var: str


@dataclass(frozen=True)
class Sequent:
    premises: tuple = ()
    conclusions: tuple = ()
    mode: str = "local"  # "local" | "global"

    def __str__(self):
        return to_text(self)


# constructor helpers
def And(a, b):
    return Binary("&", a, b)


def Or(a, b):
    return Binary("|", a, b)


def Impl(a, b):
    return Binary("->", a, b)


def Iff(a, b):
    return Binary("<->", a, b)


def Not(a):
    return Unary("-", a)


# -- tokenizer --------------------------------------------------------------------

_TOKEN = re.compile(
    r"""\s*(?:
        (?P<sym><->|->|\|-g(?![A-Za-z0-9_])|\|-|[&|\\^()\[\]{}.,-])
      | (?P<word>[A-Za-z][A-Za-z0-9_]*)
    )""",
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise FormulaSyntaxError(f"unexpected character {text[bad]!r}", bad)
        start = m.start(m.lastgroup)
        toks.append(_Tok(m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> _Tok:
        if self.cur.text != text:
            found = self.cur.text or "end of input"
            raise FormulaSyntaxError(f"expected {text!r}, found {found!r}", self.cur.pos)
        return self.take()

    def error(self, msg):
        raise FormulaSyntaxError(msg, self.cur.pos)

    # formulas
    def formula(self) -> Formula:
        left = self.impl()
        if self.cur.text == "<->":
            self.take()
            return Binary("<->", left, self.formula())
        return left

    def impl(self) -> Formula:
        left = self.disj()
        if self.cur.text == "->":
            self.take()
            return Binary("->", left, self.impl())
        return left

    def disj(self) -> Formula:
        left = self.conj()
        while self.cur.text == "|":
            self.take()
            left = Binary("|", left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        while self.cur.text in ("&", "\\", "^"):
            op = self.take().text
            left = Binary(op, left, self.unary())
        return left

    def unary(self) -> Formula:
        tok = self.cur
        if tok.text in UNARY_OPS and (tok.kind == "sym" or tok.kind == "word"):
            self.take()
            return Unary(tok.text, self.unary())
        if tok.text in ("forall", "exists", "Forall", "Exists"):
            return self.quant()
        return self.atom()

    def quant(self) -> Formula:
        head = self.take().text
        individual = head[0].isupper()
        restriction = None
        if self.cur.text == "[":
            self.take()
            name = self.word("domain name")
            self.expect("]")
            restriction = Restriction(name, "") if name in ("open", "closed") else Restriction("domain", name)
        elif self.cur.text == "{":
            self.take()
            restriction = Restriction("delta", self.word("domain function name"))
            self.expect("}")
        var = self.word("bound variable")
        self.expect(".")
        return Quant(head.lower(), var, self.formula(), restriction, individual)

    def word(self, what: str) -> str:
        if self.cur.kind != "word":
            self.error(f"expected {what}")
        return self.take().text

    def atom(self) -> Formula:
        tok = self.cur
        if tok.text == "(":
            self.take()
            inner = self.formula()
            self.expect(")")
            return inner
        if tok.kind == "word":
            if tok.text == "T":
                self.take()
                return TOP
            if tok.text == "F":
                self.take()
                return BOT
            if tok.text[0].isupper():
                self.take()
                self.expect("(")
                var = self.word("individual variable")
                self.expect(")")
                return Pred(tok.text, var)
            if tok.text in _KEYWORDS:
                self.error(f"keyword {tok.text!r} cannot be used as a variable")
            if not re.fullmatch(r"[a-z][a-z0-9_]*", tok.text):
                self.error(f"invalid variable name {tok.text!r}")
            self.take()
            return Var(tok.text)
        self.error(f"unexpected {tok.text or 'end of input'!r}")

    def formula_list(self, stop) -> tuple:
        items = []
        if self.cur.text in stop:
            return ()
        items.append(self.formula())
        while self.cur.text == ",":
            self.take()
            items.append(self.formula())
        return tuple(items)


def parse(text: str) -> Formula | Sequent:
    """Parse a formula, or a sequent when the text contains ``|-`` / ``|-g``."""
    p = _Parser(text)
    if any(t.text in ("|-", "|-g") for t in p.toks):
        prem = p.formula_list({"|-", "|-g"})
        sep = p.take()
        if sep.text not in ("|-", "|-g"):
            raise FormulaSyntaxError("expected '|-' or '|-g'", sep.pos)
        concl = p.formula_list({""})
        if p.cur.kind != "end":
            p.error(f"unexpected {p.cur.text!r}")
        return Sequent(prem, concl, "global" if sep.text == "|-g" else "local")
    f = p.formula()
    if p.cur.kind != "end":
        p.error(f"unexpected {p.cur.text!r}")
    return f


def parse_formula(text: str) -> Formula:
    out = parse(text)
    if isinstance(out, Sequent):
        raise FormulaSyntaxError("expected a formula, found a sequent", text.find("|-"))
    return out


def parse_sequent(text: str) -> Sequent:
    out = parse(text)
    if not isinstance(out, Sequent):
        return Sequent((), (out,), "local")
    return out


# -- printer ----------------------------------------------------------------------


def _fmt(f: Formula, parent: int = 0) -> str:
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Const):
        return "T" if f.value else "F"
    if isinstance(f, Pred):
        return f"{f.name}({f.var})"
    if isinstance(f, Unary):
        sep = "" if f.op == "-" else " "
        return f"{f.op}{sep}{_fmt(f.arg, 9)}"
    if isinstance(f, Quant):
        head = f.kind.capitalize() if f.individual else f.kind
        r = f.restriction
        if r is not None:
            head += f"[{r.kind}]" if r.kind in ("open", "closed") else (
                f"[{r.name}]" if r.kind == "domain" else f"{{{r.name}}}"
            )
        text = f"{head} {f.var} . {_fmt(f.body, 0)}"
        return f"({text})" if parent > 0 else text
    if isinstance(f, Binary):
        prec = _PREC[f.op]
        right_assoc = f.op in ("->", "<->")
        lp = prec + 1 if right_assoc else prec
        rp = prec if right_assoc else prec + 1
        text = f"{_fmt(f.left, lp)} {f.op} {_fmt(f.right, rp)}"
        return f"({text})" if prec < parent else text
    raise TypeError(f"not a formula: {f!r}")


def to_text(x) -> str:
    if isinstance(x, Sequent):
        sep = "|-g" if x.mode == "global" else "|-"
        left = ", ".join(_fmt(p) for p in x.premises)
        right = ", ".join(_fmt(c) for c in x.conclusions)
        return " ".join(s for s in (left, sep, right) if s)
    return _fmt(x)


def free_vars(f, bound=frozenset()) -> list[str]:
    """Free propositional variables in order of first occurrence."""
    out: list[str] = []

    def walk(g, bound):
        if isinstance(g, Var):
            if g.name not in bound and g.name not in out:
                out.append(g.name)
        elif isinstance(g, Unary):
            walk(g.arg, bound)
        elif isinstance(g, Binary):
            walk(g.left, bound)
            walk(g.right, bound)
        elif isinstance(g, Quant):
            walk(g.body, bound if g.individual else bound | {g.var})
        elif isinstance(g, Sequent):
            for h in (*g.premises, *g.conclusions):
                walk(h, bound)

    walk(f, frozenset(bound))
    return out


def uses_predicates(f) -> bool:
    if isinstance(f, Pred):
        return True
    if isinstance(f, Unary):
        return uses_predicates(f.arg)
    if isinstance(f, Binary):
        return uses_predicates(f.left) or uses_predicates(f.right)
    if isinstance(f, Quant):
        return f.individual or uses_predicates(f.body)
    if isinstance(f, Sequent):
        return any(uses_predicates(h) for h in (*f.premises, *f.conclusions))
    return False


def substitute(f: Formula, name: str, replacement: Formula) -> Formula:
    """Replace free occurrences of the propositional variable ``name``."""
    if isinstance(f, Var):
        return replacement if f.name == name else f
    if isinstance(f, Unary):
        return Unary(f.op, substitute(f.arg, name, replacement))
    if isinstance(f, Binary):
        return Binary(f.op, substitute(f.left, name, replacement), substitute(f.right, name, replacement))
    if isinstance(f, Quant):
        if not f.individual and f.var == name:
            return f
        return Quant(f.kind, f.var, substitute(f.body, name, replacement), f.restriction, f.individual)
    return f
