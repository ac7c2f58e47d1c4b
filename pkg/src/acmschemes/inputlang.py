"""Line-oriented input language: ring declaration, ideals, free modules, forms.

Grammar (one statement per line, '#' starts a comment):

    ring p=<prime> vars=<id>(,<id>)*
    ideal <name> = <polyexpr>(, <polyexpr>)*
    free <name> = <int>(,<int>)*
    form <name> = <polyexpr>

polyexpr admits integers, declared variables, + - * ^ and parentheses.  All
polynomial data must be homogeneous; every error carries its line and column.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .presentations import IdealHandle
from .ring import Polynomial, PolyRing, RingError


class ParseError(ValueError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}"
            if col is not None:
                where += f", col {col}"
            where = f" ({where})"
        super().__init__(f"{message}{where}")


@dataclass
class InputDocument:
    ring: PolyRing
    ideals: dict = field(default_factory=dict)
    frees: dict = field(default_factory=dict)  # name -> tuple of R(a_i) twists as written
    forms: dict = field(default_factory=dict)

    def free_twists_internal(self, name):
        """Twist list in the internal R(-a) convention."""
        return tuple(-a for a in self.frees[name])


_SYMBOLS = set("+-*^(),=")


def _tokenize(text, lineno):
    text = text.replace("−", "-")
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "#":
            break
        if ch.isspace():
            i += 1
            continue
        col = i + 1
        if ch in _SYMBOLS:
            tokens.append(("sym", ch, col))
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], col))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j], col))
            i = j
        else:
            raise ParseError(f"unexpected character {ch!r}", lineno, col)
    return tokens


class _ExprParser:
    def __init__(self, ring, tokens, lineno):
        self.ring = ring
        self.tokens = tokens
        self.pos = 0
        self.lineno = lineno

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression", self.lineno)
        self.pos += 1
        return tok

    def expect_sym(self, sym):
        tok = self.take()
        if tok[0] != "sym" or tok[1] != sym:
            raise ParseError(f"expected {sym!r}, found {tok[1]!r}", self.lineno, tok[2])

    def parse_expr(self) -> Polynomial:
        negate = False
        tok = self.peek()
        if tok and tok[:2] == ("sym", "-"):
            self.take()
            negate = True
        value = self.parse_term()
        if negate:
            value = -value
        while True:
            tok = self.peek()
            if tok and tok[0] == "sym" and tok[1] in "+-":
                self.take()
                rhs = self.parse_term()
                value = value + rhs if tok[1] == "+" else value - rhs
            else:
                return value

    def parse_term(self) -> Polynomial:
        value = self.parse_factor()
        while True:
            tok = self.peek()
            if tok and tok[:2] == ("sym", "*"):
                self.take()
                value = value * self.parse_factor()
            else:
                return value

    def parse_factor(self) -> Polynomial:
        base = self.parse_atom()
        tok = self.peek()
        if tok and tok[:2] == ("sym", "^"):
            self.take()
            etok = self.take()
            if etok[0] != "int":
                raise ParseError("exponent must be an integer", self.lineno, etok[2])
            return base ** int(etok[1])
        return base

    def parse_atom(self) -> Polynomial:
        tok = self.take()
        kind, text, col = tok
        if kind == "int":
            return self.ring.constant(int(text))
        if kind == "ident":
            try:
                idx = self.ring.variables.index(text)
            except ValueError:
                raise ParseError(f"unknown variable {text!r}", self.lineno, col) from None
            return self.ring.gen(idx)
        if kind == "sym" and text == "(":
            value = self.parse_expr()
            self.expect_sym(")")
            return value
        if kind == "sym" and text == "-":
            return -self.parse_atom()
        raise ParseError(f"unexpected token {text!r}", self.lineno, col)


def _split_top_level(tokens, lineno):
    """Split a token list on commas outside parentheses."""
    groups = [[]]
    depth = 0
    for tok in tokens:
        if tok[0] == "sym" and tok[1] == "(":
            depth += 1
        elif tok[0] == "sym" and tok[1] == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced parentheses", lineno, tok[2])
        if tok[0] == "sym" and tok[1] == "," and depth == 0:
            groups.append([])
        else:
            groups[-1].append(tok)
    if depth != 0:
        raise ParseError("unbalanced parentheses", lineno)
    return groups


def _parse_poly(ring, tokens, lineno) -> Polynomial:
    parser = _ExprParser(ring, tokens, lineno)
    value = parser.parse_expr()
    if parser.peek() is not None:
        tok = parser.peek()
        raise ParseError(f"trailing input {tok[1]!r}", lineno, tok[2])
    return value


def parse(text: str) -> InputDocument:
    ring = None
    doc = None
    names = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokenize(raw, lineno)
        if not tokens:
            continue
        head = tokens[0]
        if head[0] != "ident":
            raise ParseError(f"expected a statement keyword, found {head[1]!r}",
                             lineno, head[2])
        keyword = head[1]
        if keyword == "ring":
            if ring is not None:
                raise ParseError("ring is already declared (one ring per document)",
                                 lineno, head[2])
            ring = _parse_ring_line(tokens[1:], lineno)
            doc = InputDocument(ring=ring)
            continue
        if ring is None:
            raise ParseError("the ring must be declared first", lineno, head[2])
        if keyword not in ("ideal", "free", "form"):
            raise ParseError(f"unknown statement {keyword!r}", lineno, head[2])
        if len(tokens) < 4 or tokens[1][0] != "ident":
            raise ParseError(f"expected: {keyword} <name> = ...", lineno, head[2])
        name = tokens[1][1]
        if name in names:
            raise ParseError(f"duplicate name {name!r}", lineno, tokens[1][2])
        if tokens[2][:2] != ("sym", "="):
            raise ParseError("expected '='", lineno, tokens[2][2])
        body = tokens[3:]
        groups = _split_top_level(body, lineno)
        if keyword == "ideal":
            gens = []
            for gi, group in enumerate(groups, start=1):
                if not group:
                    raise ParseError("empty generator", lineno)
                f = _parse_poly(ring, group, lineno)
                if f.is_zero():
                    continue
                if not f.is_homogeneous():
                    raise ParseError(
                        f"generator {gi} of ideal {name!r} is not homogeneous: {f}",
                        lineno, group[0][2],
                    )
                gens.append(f)
            doc.ideals[name] = IdealHandle(ring, gens)
        elif keyword == "form":
            if len(groups) != 1:
                raise ParseError("a form is a single expression", lineno)
            f = _parse_poly(ring, groups[0], lineno)
            if not f.is_homogeneous():
                raise ParseError(f"form {name!r} is not homogeneous: {f}", lineno)
            doc.forms[name] = f
        else:  # free
            twists = []
            for group in groups:
                sign = 1
                vals = list(group)
                if vals and vals[0][:2] == ("sym", "-"):
                    sign = -1
                    vals = vals[1:]
                if len(vals) != 1 or vals[0][0] != "int":
                    raise ParseError("free module entries are integers", lineno)
                twists.append(sign * int(vals[0][1]))
            doc.frees[name] = tuple(twists)
        names.add(name)
    if doc is None:
        raise ParseError("no ring declaration found", 1)
    return doc


def _parse_ring_line(tokens, lineno) -> PolyRing:
    # expected: p = <int> vars = <id>(,<id>)*
    def fail(msg, tok=None):
        raise ParseError(msg, lineno, tok[2] if tok else None)

    if (
        len(tokens) < 6
        or tokens[0][:2] != ("ident", "p")
        or tokens[1][:2] != ("sym", "=")
        or tokens[2][0] != "int"
        or tokens[3][:2] != ("ident", "vars")
        or tokens[4][:2] != ("sym", "=")
    ):
        fail("expected: ring p=<prime> vars=<id>(,<id>)*")
    p = int(tokens[2][1])
    var_tokens = tokens[5:]
    variables = []
    expect_name = True
    for tok in var_tokens:
        if expect_name:
            if tok[0] != "ident":
                fail("expected a variable name", tok)
            variables.append(tok[1])
            expect_name = False
        else:
            if tok[:2] != ("sym", ","):
                fail("expected ','", tok)
            expect_name = True
    if expect_name:
        fail("trailing comma in variable list")
    try:
        return PolyRing(p, variables)
    except RingError as e:
        raise ParseError(str(e), lineno) from None


def render(doc: InputDocument) -> str:
    """Canonical text for a document; parse(render(doc)) reproduces it."""
    lines = [f"ring p={doc.ring.p} vars={','.join(doc.ring.variables)}"]
    for name, handle in doc.ideals.items():
        lines.append(f"ideal {name} = " + ", ".join(str(f) for f in handle.gens))
    for name, twists in doc.frees.items():
        lines.append(f"free {name} = " + ",".join(str(a) for a in twists))
    for name, f in doc.forms.items():
        lines.append(f"form {name} = {f}")
    return "\n".join(lines) + "\n"
