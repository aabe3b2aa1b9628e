"""Textual family descriptors.

Grammar::

    family     := KIND "(" head sep arg (sep arg)* ")"
                | "FOLIATION" "{" "base" ":" "edges" edgelist ";"
                                  "fibers" ":" fiberlist "}"
    head       := "n" | INT
    sep        := "," | ";"
    arg        := INT | jumplist | BASE
    jumplist   := "[" [INT ("," INT)*] "]"
    edgelist   := "[" [edge ("," edge)*] "]"
    edge       := "(" INT "," INT ")" [":" INT]
    fiberlist  := "[" [jumplist ("," jumplist)*] "]"
    BASE       := K_<m> | C_<m> | P_<m>

KIND is one of C, I, GP, SW, Y, H, T, X. A bare integer where a jump list
is expected is shorthand for a singleton list, so ``Y(n;1,1,1)`` means
``Y(n;[1],[1],[1])``. For ``C`` the scalars are the jumps of its single
fiber: ``C(n;1,2)`` is C_n(1,2). A concrete head such as ``GP(5,2)`` binds n.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import FamilySemanticError, FamilySyntaxError

KINDS = ("C", "I", "GP", "SW", "Y", "H", "T", "X")
BASE_KINDS = {"K": 1, "C": 3, "P": 1}  # minimum order

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<int>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<punct>[()\[\]{},;:])"
)


@dataclass(frozen=True)
class FamilyDescriptor:
    """A parsed family.

    ``args`` depends on ``kind``:

    ============ ==================================================
    C            (jumps,)
    GP           (k,)
    I            (k, l)        -- I(n,k,1) is stored as GP(n,k)
    SW, Y, H     one jump tuple per fiber (Y: 3, H: 4, SW: >= 1)
    T            (m,)
    X            (base_kind, base_order, jumps)
    FOLIATION    (m, ((i, j, mult), ...), (jumps, ...)), 1-based, i < j
    ============ ==================================================
    """

    kind: str
    args: tuple
    n: int | None = None
    source_span: tuple[int, int] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind == "I" and len(self.args) == 2 and self.args[1] == 1:
            object.__setattr__(self, "kind", "GP")
            object.__setattr__(self, "args", (self.args[0],))


@dataclass
class _Token:
    kind: str  # "int", "ident", "punct", "eof"
    text: str
    pos: int

    @property
    def value(self):
        return int(self.text) if self.kind == "int" else self.text


def tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise FamilySyntaxError(
                f"unexpected character {text[pos]!r}", text, pos,
                expected=("integer", "identifier", "punctuation"),
            )
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(_Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(_Token("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def fail(self, expected, message=None):
        tok = self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise FamilySyntaxError(message or f"unexpected {found}", self.text, tok.pos, expected)

    def semantic(self, message, pos):
        raise FamilySemanticError(message, self.text, pos)

    def at(self, text) -> bool:
        return self.tok.kind in ("punct", "ident") and self.tok.text == text

    def expect(self, text) -> _Token:
        if not self.at(text):
            self.fail([f"'{text}'"])
        tok = self.tok
        self.i += 1
        return tok

    def expect_int(self) -> _Token:
        if self.tok.kind != "int":
            self.fail(["integer"])
        tok = self.tok
        self.i += 1
        return tok

    # -- grammar ---------------------------------------------------------

    def parse(self) -> FamilyDescriptor:
        tok = self.tok
        if tok.kind != "ident" or tok.text not in KINDS + ("FOLIATION",):
            if tok.kind == "ident":
                raise FamilySemanticError(f"unknown family {tok.text!r}", self.text, tok.pos)
            self.fail([*KINDS, "FOLIATION"])
        self.i += 1
        if tok.text == "FOLIATION":
            desc = self.foliation(tok.pos)
        else:
            desc = self.named(tok)
        if self.tok.kind != "eof":
            self.fail(["end of input"])
        return desc

    def named(self, kind_tok: _Token) -> FamilyDescriptor:
        self.expect("(")
        if self.at("n"):
            n = None
            self.i += 1
        elif self.tok.kind == "int":
            n_tok = self.expect_int()
            n = n_tok.value
            if n < 1:
                self.semantic("n must be positive", n_tok.pos)
        else:
            self.fail(["'n'", "integer"])
        if not (self.at(",") or self.at(";")):
            self.fail(["','", "';'"])
        self.i += 1
        args = [self.arg()]
        while self.at(",") or self.at(";"):
            self.i += 1
            args.append(self.arg())
        end = self.expect(")")
        built = self.interpret(kind_tok, args)
        return FamilyDescriptor(kind_tok.text, built, n, (kind_tok.pos, end.pos + 1))

    def arg(self):
        """Returns (kind, value, pos) with kind in {'int', 'list', 'base'}."""
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            return ("int", tok.value, tok.pos)
        if self.at("["):
            return ("list", self.jumplist(), tok.pos)
        if tok.kind == "ident":
            m = re.fullmatch(r"([KCP])_(\d+)", tok.text)
            if m is None:
                self.semantic(f"unknown base graph {tok.text!r} (use K_m, C_m or P_m)", tok.pos)
            self.i += 1
            return ("base", (m.group(1), int(m.group(2))), tok.pos)
        self.fail(["integer", "'['", "base graph"])

    def jumplist(self) -> tuple[int, ...]:
        start = self.expect("[")
        items = []
        if not self.at("]"):
            items.append(self.expect_int().value)
            while self.at(","):
                self.i += 1
                items.append(self.expect_int().value)
        self.expect("]")
        self.check_jumps(items, start.pos)
        return tuple(items)

    def check_jumps(self, items, pos):
        if any(s < 1 for s in items):
            self.semantic("jumps must be positive", pos)
        if any(a >= b for a, b in zip(items, items[1:])):
            self.semantic("jumps must be strictly increasing", pos)

    def fiber_arg(self, a) -> tuple[int, ...]:
        kind, value, pos = a
        if kind == "int":
            self.check_jumps([value], pos)
            return (value,)
        if kind == "list":
            return value
        self.semantic("expected a jump list", pos)

    def scalar_arg(self, a, what, minimum=1) -> int:
        kind, value, pos = a
        if kind != "int":
            self.semantic(f"{what} must be an integer", pos)
        if value < minimum:
            self.semantic(f"{what} must be at least {minimum}", pos)
        return value

    def interpret(self, kind_tok: _Token, args) -> tuple:
        kind = kind_tok.text
        pos = kind_tok.pos

        def arity(count_ok, wanted):
            if not count_ok:
                self.semantic(f"{kind} takes {wanted}, got {len(args)}", pos)

        if kind == "C":
            if len(args) == 1 and args[0][0] == "list":
                return (args[0][1],)
            if any(a[0] != "int" for a in args):
                self.semantic("C takes either scalar jumps or a single jump list", pos)
            jumps = [a[1] for a in args]
            self.check_jumps(jumps, args[0][2])
            return (tuple(jumps),)
        if kind == "GP":
            arity(len(args) == 1, "1 parameter")
            return (self.scalar_arg(args[0], "k"),)
        if kind == "I":
            arity(len(args) == 2, "2 parameters")
            return (self.scalar_arg(args[0], "k"), self.scalar_arg(args[1], "l"))
        if kind == "T":
            arity(len(args) == 1, "1 parameter")
            return (self.scalar_arg(args[0], "cycle length", 3),)
        if kind in ("SW", "Y", "H"):
            wanted = {"Y": 3, "H": 4}.get(kind)
            if wanted is not None:
                arity(len(args) == wanted, f"{wanted} jump lists")
            return tuple(self.fiber_arg(a) for a in args)
        if kind == "X":
            arity(len(args) == 2, "a base graph and a jump list")
            bkind, base, bpos = args[0]
            if bkind != "base":
                self.semantic("expected a base graph K_m, C_m or P_m", bpos)
            letter, order = base
            if order < BASE_KINDS[letter]:
                self.semantic(f"{letter}_m needs m >= {BASE_KINDS[letter]}", bpos)
            return (letter, order, self.fiber_arg(args[1]))
        raise AssertionError(kind)

    def foliation(self, start: int) -> FamilyDescriptor:
        self.expect("{")
        self.expect("base")
        self.expect(":")
        self.expect("edges")
        self.expect("[")
        edges = []
        if not self.at("]"):
            edges.append(self.edge())
            while self.at(","):
                self.i += 1
                edges.append(self.edge())
        self.expect("]")
        self.expect(";")
        self.expect("fibers")
        self.expect(":")
        fibers_tok = self.expect("[")
        fibers = []
        if not self.at("]"):
            fibers.append(self.jumplist())
            while self.at(","):
                self.i += 1
                fibers.append(self.jumplist())
        self.expect("]")
        end = self.expect("}")
        m = len(fibers)
        if m == 0:
            self.semantic("a foliation needs at least one fiber", fibers_tok.pos)
        merged: dict[tuple[int, int], int] = {}
        for i, j, mult, pos in edges:
            if i == j:
                self.semantic("loops are not allowed in the base graph", pos)
            if not (1 <= i <= m and 1 <= j <= m):
                self.semantic(f"edge endpoint out of range 1..{m}", pos)
            if mult < 1:
                self.semantic("edge multiplicity must be positive", pos)
            key = (min(i, j), max(i, j))
            merged[key] = merged.get(key, 0) + mult
        canon = tuple((i, j, c) for (i, j), c in sorted(merged.items()))
        return FamilyDescriptor("FOLIATION", (m, canon, tuple(fibers)), None, (start, end.pos + 1))

    def edge(self):
        start = self.expect("(")
        i = self.expect_int().value
        self.expect(",")
        j = self.expect_int().value
        self.expect(")")
        mult = 1
        if self.at(":"):
            self.i += 1
            mult = self.expect_int().value
        return i, j, mult, start.pos


def parse_family(text: str) -> FamilyDescriptor:
    return _Parser(text).parse()


def _fmt_list(jumps) -> str:
    return "[" + ",".join(map(str, jumps)) + "]"


def _fmt_fiber(jumps) -> str:
    return str(jumps[0]) if len(jumps) == 1 else _fmt_list(jumps)


def format_family(desc: FamilyDescriptor) -> str:
    head = "n" if desc.n is None else str(desc.n)
    kind, args = desc.kind, desc.args
    if kind == "C":
        jumps = args[0]
        body = ",".join(map(str, jumps)) if jumps else "[]"
        return f"C({head};{body})"
    if kind in ("GP", "I", "T"):
        return f"{kind}({head}," + ",".join(map(str, args)) + ")"
    if kind in ("SW", "Y", "H"):
        return f"{kind}({head};" + ",".join(_fmt_fiber(f) for f in args) + ")"
    if kind == "X":
        letter, order, jumps = args
        return f"X({head};{letter}_{order},{_fmt_list(jumps)})"
    if kind == "FOLIATION":
        _, edges, fibers = args
        es = ",".join(f"({i},{j}):{c}" for i, j, c in edges)
        fs = ",".join(_fmt_list(f) for f in fibers)
        return f"FOLIATION{{base:edges[{es}];fibers:[{fs}]}}"
    raise ValueError(f"unknown family kind {kind!r}")

