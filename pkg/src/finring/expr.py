"""A small expression language for naming rings.

Grammar (constructor names are case-insensitive)::

    expr   := ctor "(" args ")"
    ctor   := Zmod | GF | product | polyquot | fnring
            | sdprod_alg | sdprod_file | table_file
    arg    := INT | "[" INT ("," INT)* "]" | expr | STRING

Coefficient lists are in ascending degree (constant term first, leading
coefficient last) and their entries are element indices of the base field.
``GF(q)`` accepts a prime power; ``GF(p, k)`` is the explicit form. A path
starting with ``@`` names a file shipped in the package data directory.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Tuple, Union

from .constructors import (
    is_prime, make_function_ring, make_gf, make_poly_quotient, make_product, make_zmod, prime_power,
)
from .ring import FiniteRing, RingError, RingHom, load_ring
from .semidirect import algebra_sdprod, build_sdprod, load_spec, prime_embedding

DATA_DIR = Path(__file__).parent / "data"
MAX_LITERAL = 2**31 - 1


class ExprError(RingError):
    """A located error in an expression: ``line``/``col`` are 1-based."""

    kind = "error"

    def __init__(self, message: str, text: str, offset: int, expected: Tuple[str, ...] = ()):
        self.message = message
        self.offset = offset
        self.line = text.count("\n", 0, offset) + 1
        self.col = offset - (text.rfind("\n", 0, offset) + 1) + 1
        self.expected = tuple(expected)
        detail = f"{self.kind} at line {self.line}, column {self.col}: {message}"
        if expected:
            detail += f" (expected {' or '.join(expected)})"
        super().__init__(detail)


class LexError(ExprError):
    kind = "lexical error"


class ParseError(ExprError):
    kind = "syntax error"


class NumericOverflow(ExprError):
    kind = "numeric overflow"


class EvalError(ExprError):
    kind = "evaluation error"


# -- AST -------------------------------------------------------------------

Span = Tuple[int, int]


@dataclass(frozen=True)
class Zmod:
    n: int
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class GF:
    p: int
    k: int = 1
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Product:
    left: "RingExpr"
    right: "RingExpr"
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class PolyQuot:
    field: "RingExpr"
    coeffs: Tuple[int, ...]
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class FnRing:
    x_size: int
    field: "RingExpr"
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class SdProdAlg:
    algebra: "RingExpr"
    field: "RingExpr"
    embedding: Optional[str] = None
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class SdProdFile:
    path: str
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class TableFile:
    path: str
    span: Span = field(default=(0, 0), compare=False, repr=False)


RingExpr = Union[Zmod, GF, Product, PolyQuot, FnRing, SdProdAlg, SdProdFile, TableFile]


# -- lexer -----------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str      # IDENT INT STRING ( ) [ ] , EOF
    value: object
    start: int
    end: int


def tokenize(text: str) -> List[Token]:
    tokens, i, n = [], 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()[],":
            tokens.append(Token(c, c, i, i + 1))
            i += 1
        elif c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            value = int(text[i:j])
            if value > MAX_LITERAL:
                raise NumericOverflow(f"integer literal {text[i:j]} exceeds {MAX_LITERAL}", text, i)
            tokens.append(Token("INT", value, i, j))
            i = j
        elif c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("IDENT", text[i:j], i, j))
            i = j
        elif c == '"':
            j, chars = i + 1, []
            while j < n and text[j] != '"':
                if text[j] == "\\" and j + 1 < n:
                    j += 1
                chars.append(text[j])
                j += 1
            if j >= n:
                raise LexError("unterminated string", text, i)
            tokens.append(Token("STRING", "".join(chars), i, j + 1))
            i = j + 1
        elif c == "-" and i + 1 < n and text[i + 1].isdigit():
            raise LexError("negative literals are not allowed", text, i)
        else:
            raise LexError(f"unexpected character {c!r}", text, i)
    tokens.append(Token("EOF", None, n, n))
    return tokens


# -- parser ----------------------------------------------------------------

CONSTRUCTORS = ("zmod", "gf", "product", "polyquot", "fnring", "sdprod_alg", "sdprod_file", "table_file")
_DISPLAY = {"zmod": "Zmod", "gf": "GF"}

# argument kinds per constructor; a trailing "?" marks an optional argument
_SIGNATURES = {
    "zmod": ("int",),
    "gf": ("int", "int?"),
    "product": ("expr", "expr"),
    "polyquot": ("expr", "list"),
    "fnring": ("int", "expr"),
    "sdprod_alg": ("expr", "expr", "string?"),
    "sdprod_file": ("string",),
    "table_file": ("string",),
}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def fail(self, message: str, expected=()) -> ParseError:
        where = "end of input" if self.tok.kind == "EOF" else repr(self.text[self.tok.start:self.tok.end])
        return ParseError(f"{message}, found {where}", self.text, self.tok.start, expected)

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            raise self.fail("unexpected token", (repr(kind) if len(kind) == 1 else kind,))
        t = self.tok
        self.pos += 1
        return t

    def parse(self) -> RingExpr:
        node = self.expr()
        if self.tok.kind != "EOF":
            raise self.fail("trailing input", ("end of input",))
        return node

    def expr(self) -> RingExpr:
        if self.tok.kind != "IDENT":
            raise self.fail("expected a ring constructor", tuple(_display(c) for c in CONSTRUCTORS))
        name_tok = self.tok
        name = name_tok.value.lower()
        if name not in CONSTRUCTORS:
            raise ParseError(f"unknown constructor {name_tok.value!r}", self.text, name_tok.start,
                             tuple(_display(c) for c in CONSTRUCTORS))
        self.pos += 1
        self.expect("(")
        args = []
        sig = _SIGNATURES[name]
        for i, kind in enumerate(sig):
            optional = kind.endswith("?")
            kind = kind.rstrip("?")
            if i > 0:
                if optional and self.tok.kind not in (",", ")"):
                    raise self.fail("unexpected token", ("','", "')'"))
                if optional and self.tok.kind == ")":
                    break
                self.expect(",")
            args.append(self.argument(kind))
        close = self.expect(")")
        return _build(name, args, (name_tok.start, close.end), self)

    def argument(self, kind: str):
        if kind == "int":
            return self.expect("INT")
        if kind == "string":
            return self.expect("STRING")
        if kind == "list":
            start = self.expect("[")
            items = [self.expect("INT").value]
            while self.tok.kind == ",":
                self.pos += 1
                items.append(self.expect("INT").value)
            self.expect("]")
            return tuple(items), start.start
        return self.expr()


def _display(name: str) -> str:
    return _DISPLAY.get(name, name)


def _build(name: str, args, span: Span, parser: _Parser) -> RingExpr:
    def positive(tok: Token) -> int:
        if tok.value < 1:
            raise ParseError("numeric literals must be positive", parser.text, tok.start)
        return tok.value

    if name == "zmod":
        # Zmod(0) is syntactically fine; the constructor rejects it with a span
        return Zmod(args[0].value, span)
    if name == "gf":
        if len(args) == 2:
            return GF(positive(args[0]), positive(args[1]), span)
        q = positive(args[0])
        pk = prime_power(q)
        if pk is not None:
            return GF(pk[0], pk[1], span)
        return GF(q, 1, span)
    if name == "product":
        return Product(args[0], args[1], span)
    if name == "polyquot":
        return PolyQuot(args[0], args[1][0], span)
    if name == "fnring":
        return FnRing(positive(args[0]), args[1], span)
    if name == "sdprod_alg":
        emb = args[2].value if len(args) > 2 else None
        return SdProdAlg(args[0], args[1], emb, span)
    if name == "sdprod_file":
        return SdProdFile(args[0].value, span)
    return TableFile(args[0].value, span)


def parse(text: str) -> RingExpr:
    """Parse ``text`` into an AST; errors carry line, column and expectations."""
    return _Parser(text).parse()


def render(node: RingExpr) -> str:
    """Canonical text for ``node``; ``parse(render(e)) == e``."""
    if isinstance(node, Zmod):
        return f"Zmod({node.n})"
    if isinstance(node, GF):
        # the short form re-parses as a prime power, so keep it for primes only
        return f"GF({node.p})" if node.k == 1 and is_prime(node.p) else f"GF({node.p},{node.k})"
    if isinstance(node, Product):
        return f"product({render(node.left)}, {render(node.right)})"
    if isinstance(node, PolyQuot):
        return f"polyquot({render(node.field)}, [{','.join(map(str, node.coeffs))}])"
    if isinstance(node, FnRing):
        return f"fnring({node.x_size}, {render(node.field)})"
    if isinstance(node, SdProdAlg):
        tail = f", {_quote(node.embedding)}" if node.embedding is not None else ""
        return f"sdprod_alg({render(node.algebra)}, {render(node.field)}{tail})"
    if isinstance(node, SdProdFile):
        return f"sdprod_file({_quote(node.path)})"
    if isinstance(node, TableFile):
        return f"table_file({_quote(node.path)})"
    raise TypeError(f"not a ring expression: {node!r}")


def _quote(path: str) -> str:
    return '"' + path.replace("\\", "\\\\").replace('"', '\\"') + '"'


# -- evaluation ------------------------------------------------------------


def resolve_path(path: str, base: Optional[Path] = None) -> Path:
    if path.startswith("@"):
        return DATA_DIR / path[1:]
    p = Path(path)
    if not p.is_absolute() and base is not None:
        p = base / p
    return p


def evaluate(node: RingExpr, source: str = "", base: Optional[Path] = None) -> FiniteRing:
    """Build the ring named by ``node``.

    Constructor failures are re-raised as :class:`EvalError` located at the
    offending sub-expression; ``source`` is the text ``node`` was parsed from.
    """
    try:
        R = _eval(node, source, base)
    except EvalError:
        raise
    except (RingError, OSError, ValueError) as exc:
        raise EvalError(str(exc), source, node.span[0]) from exc
    R.provenance = render(node)
    return R


def _eval(node: RingExpr, source: str, base) -> FiniteRing:
    sub = lambda child: evaluate(child, source, base)  # noqa: E731
    if isinstance(node, Zmod):
        return make_zmod(node.n)
    if isinstance(node, GF):
        return make_gf(node.p, node.k)
    if isinstance(node, Product):
        return make_product(sub(node.left), sub(node.right))
    if isinstance(node, PolyQuot):
        return make_poly_quotient(sub(node.field), node.coeffs)
    if isinstance(node, FnRing):
        return make_function_ring(node.x_size, sub(node.field))
    if isinstance(node, SdProdAlg):
        A, kappa = sub(node.algebra), sub(node.field)
        if node.embedding is None:
            embed = prime_embedding(kappa, A)
        else:
            table = json.loads(resolve_path(node.embedding, base).read_text())
            if isinstance(table, dict):
                table = table["map"]
            embed = RingHom(kappa, A, table, True)
        return algebra_sdprod(A, kappa, embed)
    if isinstance(node, SdProdFile):
        return build_sdprod(load_spec(resolve_path(node.path, base)))
    if isinstance(node, TableFile):
        return load_ring(resolve_path(node.path, base))
    raise TypeError(f"not a ring expression: {node!r}")


def eval_text(text: str, base: Optional[Path] = None) -> FiniteRing:
    """Parse and evaluate in one step."""
    return evaluate(parse(text), text, base)
