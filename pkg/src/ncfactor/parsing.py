"""Parse human-written polynomial expressions and print them back.

Grammar (also documented in the README)::

    expr   := term (("+" | "-") term)*
    term   := ["-"] factor (["*"] factor)*   # adjacency is multiplication
    factor := atom ("^" INT)*
    atom   := INT ["/" INT] | IDENT | "(" expr ")"

Multiplication is non-commutative; factor order is preserved left to right.
Identifiers lex greedily, so ``xy`` is a single (unknown) name while
``x*y``, ``x y`` and ``x(y)`` all denote the product.  Rational literals are
``p`` or ``p/q``; there are no floating-point literals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import DEFAULT_ALPHABET, Alphabet, NcPolynomial
from .errors import ParseError

_OPS = set("+-*/^()")


@dataclass(frozen=True)
class Token:
    kind: str  # "int" | "ident" | one of +-*/^() | "end"
    text: str
    pos: int


def _tokenize(text: str):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("ident", text[i:j], i))
            i = j
            continue
        if ch in _OPS:
            tokens.append(Token(ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(Token("end", "", n))
    return tokens


# ----------------------------------------------------------------- AST


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Letter:
    name: str
    pos: int


@dataclass(frozen=True)
class Neg:
    node: object


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


_ATOM_STARTS = ("int", "ident", "(")


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind):
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.text or 'end of input'!r}", tok.pos)
        return self.advance()

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected {tok.text!r}", tok.pos)
        return node

    def expr(self):
        node = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.advance()
            rhs = self.term()
            node = Add(node, rhs) if op.kind == "+" else Sub(node, rhs)
        return node

    def term(self):
        negate = False
        if self.peek().kind == "-":
            self.advance()
            negate = True
        node = self.factor()
        while True:
            tok = self.peek()
            if tok.kind == "*":
                self.advance()
                node = Mul(node, self.factor())
            elif tok.kind in _ATOM_STARTS:
                node = Mul(node, self.factor())
            else:
                break
        return Neg(node) if negate else node

    def factor(self):
        node = self.atom()
        while self.peek().kind == "^":
            self.advance()
            tok = self.peek()
            if tok.kind == "-":
                raise ParseError("negative exponent", tok.pos)
            exp = self.expect("int")
            node = Pow(node, int(exp.text))
        return node

    def atom(self):
        tok = self.peek()
        if tok.kind == "int":
            self.advance()
            num = Fraction(int(tok.text))
            if self.peek().kind == "/":
                self.advance()
                den = self.expect("int")
                if int(den.text) == 0:
                    raise ParseError("zero denominator", den.pos)
                num = Fraction(int(tok.text), int(den.text))
            return Num(num)
        if tok.kind == "ident":
            self.advance()
            return Letter(tok.text, tok.pos)
        if tok.kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.pos)


def parse_ast(text: str):
    """Parse to an AST without resolving letters against an alphabet."""
    return _Parser(_tokenize(text)).parse()


def ast_to_poly(node, alphabet: Alphabet) -> NcPolynomial:
    if isinstance(node, Num):
        return NcPolynomial.constant(alphabet, node.value)
    if isinstance(node, Letter):
        if node.name not in alphabet:
            raise ParseError(f"unknown letter {node.name!r}", node.pos)
        return NcPolynomial.letter(alphabet, node.name)
    if isinstance(node, Neg):
        return -ast_to_poly(node.node, alphabet)
    if isinstance(node, Add):
        return ast_to_poly(node.left, alphabet) + ast_to_poly(node.right, alphabet)
    if isinstance(node, Sub):
        return ast_to_poly(node.left, alphabet) - ast_to_poly(node.right, alphabet)
    if isinstance(node, Mul):
        return ast_to_poly(node.left, alphabet) * ast_to_poly(node.right, alphabet)
    if isinstance(node, Pow):
        return ast_to_poly(node.base, alphabet) ** node.exponent
    raise TypeError(f"unknown AST node {node!r}")


def parse_poly(text: str, alphabet: Alphabet = DEFAULT_ALPHABET) -> NcPolynomial:
    """Parse an expression into a normalized polynomial."""
    return ast_to_poly(parse_ast(text), alphabet)


# ------------------------------------------------------------- printing


def format_word(word, alphabet: Alphabet) -> str:
    """Render a word with ``*`` between letters, collapsing runs to powers."""
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        name = alphabet.letters[word[i]]
        parts.append(name if j - i == 1 else f"{name}^{j - i}")
        i = j
    return "*".join(parts)


def format_poly(p: NcPolynomial) -> str:
    """Canonical rendering: ascending deglex term order, ``*`` products.

    Round-trips through :func:`parse_poly` to an equal polynomial.
    """
    if p.is_zero():
        return "0"
    pieces = []
    for word in p.support():
        c = p.terms[word]
        mag = abs(c)
        if not word:
            body = str(mag)
        elif mag == 1:
            body = format_word(word, p.alphabet)
        else:
            body = f"{mag}*{format_word(word, p.alphabet)}"
        if not pieces:
            pieces.append(f"-{body}" if c < 0 else body)
        else:
            pieces.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(pieces)
