"""
Terms over the common-meadow signature: syntax tree, parser, printer and
evaluator.

Concrete syntax::

    expr    := term { ('+'|'-') term }
    term    := factor { ('*'|'/') factor }
    factor  := '-' factor | primary
    primary := atom { '^-1' }
    atom    := nat | ident | 'bot' | '_|_' | '(' expr ')' | 'inv' '(' expr ')'

``a - b`` is ``a + (-b)``, ``a / b`` is ``a * b^-1`` and a literal ``n``
is the numeral chain ``1 + 1 + ... + 1``.
"""
import re
from dataclasses import dataclass
from typing import Dict, Iterator, List, NamedTuple, Optional, Set, Tuple

from core.errors import ParseError, UsageError
from core.values import Model, Value

IDENTIFIER_RE = re.compile(r"^[a-zA-Z][a-zA-Z0-9_]*$")
RESERVED_NAMES = frozenset({"bot"})

Assignment = Dict[str, Value]
Path = Tuple[int, ...]

# render precedence levels
SUM, PRODUCT, PREFIX, POSTFIX, ATOM = range(1, 6)


class Term:
    """Base class of term nodes. Nodes are immutable and compare structurally."""

    def __add__(self, other: "Term") -> "Term":
        return Add(self, other)

    def __sub__(self, other: "Term") -> "Term":
        return Add(self, Neg(other))

    def __mul__(self, other: "Term") -> "Term":
        return Mul(self, other)

    def __truediv__(self, other: "Term") -> "Term":
        return Mul(self, Inv(other))

    def __neg__(self) -> "Term":
        return Neg(self)

    def inv(self) -> "Term":
        return Inv(self)

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Zero(Term):
    pass


@dataclass(frozen=True)
class One(Term):
    pass


@dataclass(frozen=True)
class BotConst(Term):
    pass


@dataclass(frozen=True)
class Var(Term):
    name: str

    def __post_init__(self):
        if not IDENTIFIER_RE.match(self.name) or self.name in RESERVED_NAMES:
            raise UsageError(f"'{self.name}' is not a valid variable name")


@dataclass(frozen=True)
class Add(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Mul(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Neg(Term):
    arg: Term


@dataclass(frozen=True)
class Inv(Term):
    arg: Term


ZERO = Zero()
ONE = One()
BOTTOM = BotConst()


def numeral(n: int) -> Term:
    """The numeral for n: 0, 1, and (n-1) + 1 from there on."""
    if n < 0:
        raise UsageError(f"Numerals are natural numbers, got {n}")
    if n == 0:
        return ZERO
    term: Term = ONE
    for _ in range(n - 1):
        term = Add(term, ONE)
    return term


def numeral_value(t: Term) -> Optional[int]:
    """The n such that t is exactly the numeral for n, else None."""
    if isinstance(t, Zero):
        return 0
    count = 0
    while isinstance(t, Add) and isinstance(t.right, One):
        count += 1
        t = t.left
    if isinstance(t, One):
        return count + 1
    return None


def children(t: Term) -> Tuple[Term, ...]:
    if isinstance(t, (Add, Mul)):
        return (t.left, t.right)
    if isinstance(t, (Neg, Inv)):
        return (t.arg,)
    return ()


def rebuild(t: Term, kids: Tuple[Term, ...]) -> Term:
    """A node of the same kind as t with new children."""
    if isinstance(t, (Add, Mul)):
        return type(t)(kids[0], kids[1])
    if isinstance(t, (Neg, Inv)):
        return type(t)(kids[0])
    return t


def _walk(t: Term) -> Iterator[Term]:
    stack = [t]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(children(node))


def variables(t: Term) -> Set[str]:
    """Names of the variables occurring in t."""
    return {node.name for node in _walk(t) if isinstance(node, Var)}


def contains_bottom(t: Term) -> bool:
    return any(isinstance(node, BotConst) for node in _walk(t))


def depth(t: Term) -> int:
    kids = children(t)
    if not kids:
        return 0
    return 1 + max(depth(kid) for kid in kids)


# -- parsing ---------------------------------------------------------------

class Token(NamedTuple):
    kind: str
    text: str
    column: int


_TOKEN_RE = re.compile(
    r"""
    (?P<space>\s+)
  | (?P<inverse>\^\s*-\s*1(?!\d))
  | (?P<bot>_\|_)
  | (?P<number>\d+)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<op>[-+*/()])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> List[Token]:
    tokens = []
    position = 0
    while position < len(text):
        match = _TOKEN_RE.match(text, position)
        if not match:
            raise ParseError(f"Unknown token {text[position]!r}", position + 1, text)
        kind = match.lastgroup
        if kind != "space":
            tokens.append(Token(kind, match.group(), position + 1))
        position = match.end()
    tokens.append(Token("end", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.index + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def error(self, message: str, token: Token) -> ParseError:
        return ParseError(message, token.column, self.text)

    def expect_op(self, op: str) -> Token:
        token = self.peek()
        if token.kind != "op" or token.text != op:
            found = token.text or "end of input"
            raise self.error(f"Expected '{op}' but found '{found}'", token)
        return self.advance()

    def is_op(self, *ops: str) -> bool:
        token = self.peek()
        return token.kind == "op" and token.text in ops

    def parse(self) -> Term:
        node = self.expr()
        token = self.peek()
        if token.kind != "end":
            raise self.error(f"Unexpected '{token.text}'", token)
        return node

    def expr(self) -> Term:
        node = self.term()
        while self.is_op("+", "-"):
            op = self.advance().text
            right = self.term()
            node = Add(node, right) if op == "+" else Add(node, Neg(right))
        return node

    def term(self) -> Term:
        node = self.factor()
        while self.is_op("*", "/"):
            op = self.advance().text
            right = self.factor()
            node = Mul(node, right) if op == "*" else Mul(node, Inv(right))
        return node

    def factor(self) -> Term:
        if self.is_op("-"):
            self.advance()
            return Neg(self.factor())
        return self.primary()

    def primary(self) -> Term:
        node = self.atom()
        while self.peek().kind == "inverse":
            self.advance()
            node = Inv(node)
        return node

    def atom(self) -> Term:
        token = self.peek()
        if token.kind == "number":
            self.advance()
            return numeral(int(token.text))
        if token.kind == "bot":
            self.advance()
            return BOTTOM
        if token.kind == "ident":
            self.advance()
            if token.text == "bot":
                return BOTTOM
            if token.text == "inv" and self.is_op("("):
                self.advance()
                inner = self.expr()
                self.expect_op(")")
                return Inv(inner)
            return Var(token.text)
        if self.is_op("("):
            self.advance()
            inner = self.expr()
            self.expect_op(")")
            return inner
        found = token.text or "end of input"
        raise self.error(f"Expected an operand but found '{found}'", token)


def parse(text: str) -> Term:
    """Parse a term; raises ParseError with a 1-based column."""
    return _Parser(text).parse()


# -- printing --------------------------------------------------------------

def _wrap(t: Term, minimum: int) -> str:
    text, level = _render(t)
    return f"({text})" if level < minimum else text


def _render(t: Term) -> Tuple[str, int]:
    value = numeral_value(t)
    if value is not None:
        return str(value), ATOM
    if isinstance(t, BotConst):
        return "bot", ATOM
    if isinstance(t, Var):
        return t.name, ATOM
    if isinstance(t, Add):
        left = _wrap(t.left, SUM)
        if isinstance(t.right, Neg):
            return f"{left} - {_wrap(t.right.arg, PRODUCT)}", SUM
        return f"{left} + {_wrap(t.right, PRODUCT)}", SUM
    if isinstance(t, Mul):
        return f"{_wrap(t.left, PRODUCT)} * {_wrap(t.right, PREFIX)}", PRODUCT
    if isinstance(t, Neg):
        return f"-{_wrap(t.arg, PREFIX)}", PREFIX
    if isinstance(t, Inv):
        return f"{_wrap(t.arg, POSTFIX)}^-1", POSTFIX
    raise UsageError(f"Not a term: {t!r}")


def render(t: Term) -> str:
    """Print t with the fewest parentheses that parse back to t."""
    return _render(t)[0]


# -- evaluation ------------------------------------------------------------

def evaluate(t: Term, assignment: Assignment, model: Model) -> Value:
    """Evaluate t homomorphically in model under the assignment."""
    value = numeral_value(t)
    if value is not None:
        return model.numeral(value)
    if isinstance(t, BotConst):
        return model.bot
    if isinstance(t, Var):
        if t.name not in assignment:
            raise UsageError(f"Variable '{t.name}' is not bound")
        bound = assignment[t.name]
        model.check(bound)
        return bound
    if isinstance(t, Add):
        return model.add(evaluate(t.left, assignment, model), evaluate(t.right, assignment, model))
    if isinstance(t, Mul):
        return model.mul(evaluate(t.left, assignment, model), evaluate(t.right, assignment, model))
    if isinstance(t, Neg):
        return model.neg(evaluate(t.arg, assignment, model))
    if isinstance(t, Inv):
        return model.inv(evaluate(t.arg, assignment, model))
    raise UsageError(f"Not a term: {t!r}")


# -- structural helpers ----------------------------------------------------

def substitute(t: Term, mapping: Dict[str, Term]) -> Term:
    """Replace variables by terms simultaneously."""
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    kids = children(t)
    if not kids:
        return t
    return rebuild(t, tuple(substitute(kid, mapping) for kid in kids))


def match(pattern: Term, t: Term, bindings: Optional[Dict[str, Term]] = None) -> Optional[Dict[str, Term]]:
    """First-order matching of pattern against t; returns the bindings or None."""
    bindings = dict(bindings or {})
    stack = [(pattern, t)]
    while stack:
        pat, node = stack.pop()
        if isinstance(pat, Var):
            bound = bindings.get(pat.name)
            if bound is None:
                bindings[pat.name] = node
            elif bound != node:
                return None
            continue
        if type(pat) is not type(node):
            return None
        pat_kids, node_kids = children(pat), children(node)
        stack.extend(zip(pat_kids, node_kids))
    return bindings


def positions(t: Term) -> Iterator[Path]:
    """Paths to every subterm, root first."""
    stack: List[Tuple[Path, Term]] = [((), t)]
    while stack:
        path, node = stack.pop()
        yield path
        for index, kid in enumerate(children(node)):
            stack.append((path + (index,), kid))


def subterm_at(t: Term, path: Path) -> Term:
    for index in path:
        t = children(t)[index]
    return t


def replace_at(t: Term, path: Path, new: Term) -> Term:
    if not path:
        return new
    kids = list(children(t))
    kids[path[0]] = replace_at(kids[path[0]], path[1:], new)
    return rebuild(t, tuple(kids))
