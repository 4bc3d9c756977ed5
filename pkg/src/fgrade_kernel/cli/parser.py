"""Tokenizer and recursive-descent parser for ``.alg`` session scripts.

A script is a sequence of ``;``-terminated statements::

    ring R = QQ[x1,x2,x3] order=grevlex;
    ideal a = (x1, x2, x3);
    list xs = (x1, x2);
    module M = free(1) ++ cyclic(x2^2, x3^3);
    fgrade a b M method=both;

``#`` starts a comment running to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import FGradeError
from ..groebner import Ideal
from ..modules import FPModule, Matrix, block_diag
from ..ring import QQ, MonomialOrder, PolyRing, PrimeField

VERBS = (
    "gb",
    "dim",
    "ann",
    "depth",
    "fgrade",
    "check-frs",
    "max-frs",
    "ext",
    "koszul-homology",
    "check-fmodule",
    "check-bcm",
)
ORDERS = ("grevlex", "lex", "graded-lex")


class ParseError(FGradeError, ValueError):
    """Lexical, syntactic or binding error with a source position."""

    def __init__(self, message, line, column, expected=()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = list(expected)
        where = f"line {line}, column {column}"
        extra = f" (expected {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{where}: {message}{extra}")

    def as_dict(self):
        return {
            "type": "ParseError",
            "message": self.message,
            "line": self.line,
            "column": self.column,
            "expected": self.expected,
        }


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, INT, SYM, EOF
    text: str
    line: int
    column: int
    end: int  # offset just past the token


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<comment>#[^\n]*)|(?P<NAME>[A-Za-z_][A-Za-z0-9_]*)|(?P<INT>[0-9]+)"
    r"|(?P<SYM>\+\+|[-+*/^()\[\],;=])"
)


def tokenize(text: str) -> list:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1, m.end()))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1, pos))
    return tokens


# ---------------------------------------------------------------------------
# session objects
# ---------------------------------------------------------------------------


@dataclass
class Arg:
    """A command argument: a bound name, an inline polynomial list or an integer."""

    kind: str  # name, list, int
    value: object
    text: str
    line: int = 0
    column: int = 0


@dataclass
class Command:
    verb: str
    args: list
    options: dict
    line: int
    column: int
    text: str = ""


@dataclass
class Session:
    ring: PolyRing | None = None
    ring_name: str | None = None
    bindings: dict = field(default_factory=dict)  # name -> (kind, object)

    def kinds(self) -> dict:
        kinds = {"ring": 1 if self.ring is not None else 0, "ideal": 0, "list": 0, "module": 0}
        for kind, _ in self.bindings.values():
            kinds[kind] += 1
        return kinds

    def lookup(self, name):
        return self.bindings.get(name)


class _Parser:
    def __init__(self, text: str, ring: PolyRing | None = None):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.session = Session(ring=ring)

    # -- token helpers -------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k=1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def fail(self, message, expected=(), tok=None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.column, expected)

    def _describe(self, tok):
        return "end of input" if tok.kind == "EOF" else repr(tok.text)

    def expect(self, text, what=None):
        if self.tok.text != text or self.tok.kind not in ("SYM", "NAME"):
            self.fail(f"unexpected {self._describe(self.tok)}", [repr(text)] if what is None else [what])
        return self.advance()

    def expect_kind(self, kind, what):
        if self.tok.kind != kind:
            self.fail(f"unexpected {self._describe(self.tok)}", [what])
        return self.advance()

    def at(self, text):
        return self.tok.kind in ("SYM", "NAME") and self.tok.text == text

    # -- statements -------------------------------------------------

    def parse_script(self):
        commands = []
        while self.tok.kind != "EOF":
            start = self.tok
            if start.kind != "NAME":
                self.fail(f"unexpected {self._describe(start)}", ["statement"])
            word = start.text
            if word == "ring":
                self.ring_stmt()
            elif word in ("ideal", "list", "module"):
                self.binding_stmt(word)
            else:
                commands.append(self.command_stmt())
        return self.session, commands

    def ring_stmt(self):
        kw = self.advance()
        if self.session.ring is not None:
            self.fail("a session has exactly one ring", tok=kw)
        name = self.expect_kind("NAME", "ring name").text
        self.expect("=")
        K = self.field_spec()
        self.expect("[")
        names = [self.expect_kind("NAME", "variable name").text]
        while self.at(","):
            self.advance()
            names.append(self.expect_kind("NAME", "variable name").text)
        self.expect("]")
        if len(set(names)) != len(names):
            self.fail("duplicate variable names", tok=kw)
        order = "grevlex"
        if self.at("order"):
            self.advance()
            self.expect("=")
            t = self.expect_kind("NAME", "monomial order")
            order = t.text
            # graded-lex is two tokens
            if order == "graded" and self.at("-"):
                self.advance()
                self.expect("lex")
                order = "graded-lex"
            if order not in ORDERS:
                self.fail(f"unknown order {order!r}", list(ORDERS), tok=t)
        self.expect(";")
        self.session.ring = PolyRing(tuple(names), K, MonomialOrder(order))
        self.session.ring_name = name

    def field_spec(self):
        t = self.expect_kind("NAME", "coefficient field QQ or Fp(p)")
        if t.text == "QQ":
            return QQ
        if t.text == "Fp":
            self.expect("(")
            p = self.expect_kind("INT", "prime")
            self.expect(")")
            try:
                return PrimeField(int(p.text))
            except ValueError as exc:
                self.fail(str(exc), tok=p)
        self.fail(f"unknown field {t.text!r}", ["QQ", "Fp(p)"], tok=t)

    def _need_ring(self, tok):
        if self.session.ring is None:
            self.fail("no ring declared before this statement", ["ring declaration"], tok=tok)
        return self.session.ring

    def _bind(self, name_tok, kind, obj):
        name = name_tok.text
        s = self.session
        if name in s.bindings or name == s.ring_name or name in s.ring.names:
            self.fail(f"name {name!r} is already bound", tok=name_tok)
        s.bindings[name] = (kind, obj)

    def binding_stmt(self, kind):
        kw = self.advance()
        R = self._need_ring(kw)
        name_tok = self.expect_kind("NAME", f"{kind} name")
        self.expect("=")
        if kind == "module":
            obj = self.module_expr()
        else:
            polys = self.poly_list()
            obj = Ideal(R, polys) if kind == "ideal" else polys
        self.expect(";")
        self._bind(name_tok, kind, obj)

    def command_stmt(self):
        start = self.advance()
        verb = start.text
        # rejoin hyphenated verbs written without spaces
        while self.at("-") and self.tok.end - len(self.tok.text) == self.toks[self.i - 1].end:
            nxt = self.peek()
            if nxt.kind != "NAME" or nxt.end - len(nxt.text) != self.tok.end:
                break
            self.advance()
            verb += "-" + self.advance().text
        if verb not in VERBS:
            self.fail(f"unknown verb {verb!r}", ["ring", "ideal", "list", "module", *VERBS], tok=start)
        self._need_ring(start)
        args, options = [], {}
        while not self.at(";"):
            t = self.tok
            if t.kind == "EOF":
                self.fail("unterminated command", ["';'"])
            if t.kind == "NAME" and self.peek().text == "=":
                self.advance()
                self.advance()
                if t.text in options:
                    self.fail(f"option {t.text!r} given twice", tok=t)
                options[t.text] = self.option_value()
                continue
            if options:
                self.fail("positional argument after options", ["option", "';'"])
            args.append(self.argument())
        end = self.advance()
        return Command(verb, args, options, start.line, start.column, self.text[self._offset(start) : end.end])

    def _offset(self, tok):
        return tok.end - len(tok.text)

    def argument(self) -> Arg:
        t = self.tok
        if t.kind == "NAME":
            self.advance()
            if self.session.lookup(t.text) is None and t.text != self.session.ring_name:
                self.fail(f"undefined name {t.text!r}", tok=t)
            return Arg("name", t.text, t.text, t.line, t.column)
        if t.kind == "INT":
            self.advance()
            return Arg("int", int(t.text), t.text, t.line, t.column)
        if self.at("("):
            polys = self.poly_list()
            return Arg("list", polys, self.text[self._offset(t) : self.toks[self.i - 1].end], t.line, t.column)
        self.fail(f"unexpected {self._describe(t)}", ["name", "(polynomial list)", "integer"])

    def option_value(self):
        t = self.tok
        if t.kind == "INT":
            self.advance()
            return int(t.text)
        if t.kind == "NAME":
            self.advance()
            text = t.text
            while self.at("-") and self.peek().kind == "NAME" and self._offset(self.tok) == t.end:
                self.advance()
                text += "-" + self.advance().text
            return text
        if self.at("["):
            self.advance()
            items = []
            if not self.at("]"):
                items.append(self.ideal_ref())
                while self.at(","):
                    self.advance()
                    items.append(self.ideal_ref())
            self.expect("]")
            return items
        self.fail(f"unexpected {self._describe(t)}", ["option value"])

    def ideal_ref(self) -> Ideal:
        R = self.session.ring
        t = self.tok
        if t.kind == "NAME":
            self.advance()
            b = self.session.lookup(t.text)
            if b is None or b[0] not in ("ideal", "list"):
                self.fail(f"{t.text!r} is not a bound ideal", tok=t)
            return b[1] if b[0] == "ideal" else Ideal(R, b[1])
        return Ideal(R, self.poly_list())

    # -- modules --------------------------------------------------------

    def module_expr(self) -> FPModule:
        parts = [self.module_term()]
        while self.at("++"):
            self.advance()
            parts.append(self.module_term())
        if len(parts) == 1:
            return parts[0]
        R = self.session.ring
        return FPModule(block_diag(R, *[p.presentation for p in parts]))

    def module_term(self) -> FPModule:
        R = self.session.ring
        t = self.expect_kind("NAME", "free(n), cyclic(...), coker[[...]] or a module name")
        if t.text == "free":
            self.expect("(")
            n = int(self.expect_kind("INT", "rank").text)
            self.expect(")")
            return FPModule.free(R, n)
        if t.text == "cyclic":
            return FPModule.cyclic(R, self.poly_list())
        if t.text == "coker":
            return FPModule.coker(self.matrix())
        if t.text == self.session.ring_name:
            return FPModule.free(R, 1)
        b = self.session.lookup(t.text)
        if b is None:
            self.fail(f"undefined name {t.text!r}", tok=t)
        if b[0] == "module":
            return b[1]
        if b[0] == "ideal":
            return FPModule.cyclic(R, b[1].gens)
        self.fail(f"{t.text!r} is not a module", tok=t)

    def matrix(self) -> Matrix:
        R = self.session.ring
        self.expect("[")
        rows = [self.bracket_row()]
        while self.at(","):
            self.advance()
            rows.append(self.bracket_row())
        t = self.expect("]")
        if len({len(r) for r in rows}) != 1:
            self.fail("matrix rows have different lengths", tok=t)
        return Matrix.from_rows(R, rows)

    def bracket_row(self):
        self.expect("[")
        row = []
        if not self.at("]"):
            row.append(self.poly())
            while self.at(","):
                self.advance()
                row.append(self.poly())
        self.expect("]")
        return row

    # -- polynomials ----------------------------------------------------

    def poly_list(self) -> list:
        self.expect("(")
        out = []
        if not self.at(")"):
            out.append(self.poly())
            while self.at(","):
                self.advance()
                out.append(self.poly())
        self.expect(")", "',' or ')'")
        return out

    def poly(self):
        R = self.session.ring
        neg = False
        if self.at("-") or self.at("+"):
            neg = self.advance().text == "-"
        acc = self.term()
        if neg:
            acc = -acc
        while self.at("+") or self.at("-"):
            op = self.advance().text
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return R(acc)

    def term(self):
        acc = self.factor()
        while self.at("*"):
            self.advance()
            acc = acc * self.factor()
        t = self.tok
        if t.kind in ("NAME", "INT") or self.at("("):
            self.fail(f"unexpected {self._describe(t)}", ["'*'", "'+'", "'-'", "','", "')'", "';'"])
        return acc

    def factor(self):
        base = self.atom()
        if self.at("^"):
            self.advance()
            e = int(self.expect_kind("INT", "exponent").text)
            base = base**e
        return base

    def atom(self):
        R = self.session.ring
        t = self.tok
        if t.kind == "INT":
            self.advance()
            value = Fraction(int(t.text))
            if self.at("/"):
                self.advance()
                d = self.expect_kind("INT", "denominator")
                if int(d.text) == 0:
                    self.fail("zero denominator", tok=d)
                value = Fraction(int(t.text), int(d.text))
            try:
                return R.constant(value)
            except (ZeroDivisionError, ValueError) as exc:
                self.fail(str(exc), tok=t)
        if t.kind == "NAME":
            if t.text not in R.names:
                self.fail(f"unknown variable {t.text!r}", [*R.names], tok=t)
            self.advance()
            return R.var(t.text)
        if self.at("("):
            self.advance()
            p = self.poly()
            self.expect(")")
            return p
        self.fail(f"unexpected {self._describe(t)}", ["number", "variable", "'('"])


def parse_session(text: str):
    """Parse a script into a :class:`Session` and its list of :class:`Command`."""
    return _Parser(text).parse_script()


def parse_polynomial(text: str, ring: PolyRing):
    p = _Parser(text, ring)
    out = p.poly()
    if p.tok.kind != "EOF":
        p.fail(f"unexpected {p._describe(p.tok)}", ["end of input"])
    return out


def parse_matrix(text: str, ring: PolyRing) -> Matrix:
    p = _Parser(text, ring)
    out = p.matrix()
    if p.tok.kind != "EOF":
        p.fail(f"unexpected {p._describe(p.tok)}", ["end of input"])
    return out


def parse_ideal(text: str, ring: PolyRing) -> Ideal:
    p = _Parser(text, ring)
    out = p.poly_list()
    if p.tok.kind != "EOF":
        p.fail(f"unexpected {p._describe(p.tok)}", ["end of input"])
    return Ideal(ring, out)
