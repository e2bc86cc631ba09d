"""
Exact common-meadow models.

Every model exposes the same surface: the constants 0, 1 and (when the
model has one) the additional value, the four operations, numerals and
text conversion. The additional value is the singleton ``BOT``; the base
class absorbs it before any model-specific arithmetic runs.
"""
import random
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Hashable, List, Optional, Sequence, Tuple, Union

from loguru import logger
from sympy import isprime

from core.errors import DomainError, UsageError

BOT_TEXT = "_|_"
BOT_ALIASES = ("_|_", "bot")

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+))?\s*$")
_INTEGER_RE = re.compile(r"^\s*([+-]?\d+)\s*$")


class Bottom:
    """The additional value of a common meadow."""

    _instance = None
    __slots__ = ()

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "BOT"

    def __str__(self) -> str:
        return BOT_TEXT

    def __reduce__(self):
        return (Bottom, ())


BOT = Bottom()


@dataclass(frozen=True)
class FpElement:
    """A residue modulo a prime."""

    residue: int
    modulus: int

    def __post_init__(self):
        if not 0 <= self.residue < self.modulus:
            raise UsageError(f"Residue {self.residue} not reduced modulo {self.modulus}")

    def __str__(self) -> str:
        return str(self.residue)


QBot = Union[Fraction, Bottom]
FpBot = Union[FpElement, Bottom]
Value = Any


class Model(ABC):
    """
    A carrier with the operations of the common-meadow signature.

    Subclasses implement the arithmetic on proper (non-bottom) values only.
    """

    name: str = ""
    finite: bool = False
    has_bottom: bool = True

    @property
    @abstractmethod
    def zero(self) -> Value:
        ...

    @property
    @abstractmethod
    def one(self) -> Value:
        ...

    @property
    def bot(self) -> Value:
        if not self.has_bottom:
            raise UsageError(f"Model {self.name} has no additional value")
        return BOT

    @abstractmethod
    def contains(self, value: Value) -> bool:
        ...

    @abstractmethod
    def _add(self, a: Value, b: Value) -> Value:
        ...

    @abstractmethod
    def _mul(self, a: Value, b: Value) -> Value:
        ...

    @abstractmethod
    def _neg(self, a: Value) -> Value:
        ...

    @abstractmethod
    def _inv(self, a: Value) -> Value:
        ...

    @abstractmethod
    def _parse_proper(self, text: str) -> Value:
        ...

    def _carrier(self) -> List[Value]:
        raise UsageError(f"Model {self.name} is infinite and cannot be enumerated")

    def _sample_proper(self, rng: random.Random, bound: int) -> Value:
        raise UsageError(f"Model {self.name} does not support random sampling")

    def check(self, *values: Value) -> None:
        """Raise UsageError unless every value belongs to this model."""
        for value in values:
            if not self.contains(value):
                raise UsageError(f"Value {value!r} does not belong to model {self.name}")

    def add(self, a: Value, b: Value) -> Value:
        self.check(a, b)
        if a is BOT or b is BOT:
            return BOT
        return self._add(a, b)

    def mul(self, a: Value, b: Value) -> Value:
        self.check(a, b)
        if a is BOT or b is BOT:
            return BOT
        return self._mul(a, b)

    def neg(self, a: Value) -> Value:
        self.check(a)
        if a is BOT:
            return BOT
        return self._neg(a)

    def inv(self, a: Value) -> Value:
        self.check(a)
        if a is BOT:
            return BOT
        return self._inv(a)

    def numeral(self, n: int) -> Value:
        """Evaluate the numeral for n: 0, 1, then (n-1) + 1."""
        if n < 0:
            raise UsageError(f"Numerals are natural numbers, got {n}")
        if n == 0:
            return self.zero
        acc = self.one
        for _ in range(n - 1):
            acc = self.add(acc, self.one)
        return acc

    def elements(self) -> List[Value]:
        """Full carrier, additional value last."""
        if not self.finite:
            raise UsageError(f"Model {self.name} is infinite and cannot be enumerated")
        carrier = list(self._carrier())
        if self.has_bottom:
            carrier.append(BOT)
        return carrier

    def boundary_values(self) -> List[Value]:
        """Values every randomized check tries first."""
        values = [self.zero, self.one, self.neg(self.one)]
        if self.has_bottom:
            values.append(BOT)
        unique = []
        for value in values:
            if value not in unique:
                unique.append(value)
        return unique

    def sample(self, rng: random.Random, bound: int = 9, bot_probability: float = 0.15) -> Value:
        if self.has_bottom and rng.random() < bot_probability:
            return BOT
        return self._sample_proper(rng, bound)

    def parse_value(self, text: str) -> Value:
        stripped = text.strip()
        if stripped in BOT_ALIASES:
            return self.bot
        return self._parse_proper(stripped)

    def render_value(self, value: Value) -> str:
        self.check(value)
        return str(value)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


def _parse_rational(text: str, model_name: str) -> Fraction:
    match = _RATIONAL_RE.match(text)
    if not match:
        raise UsageError(f"Cannot read '{text}' as a value of {model_name} (expected p or p/q)")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise UsageError(f"Zero denominator in '{text}'; write {BOT_TEXT} for the additional value")
    return Fraction(numerator, denominator)


class QBotModel(Model):
    """Rationals with the bottom-totalized inverse."""

    name = "qbot"

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def contains(self, value: Value) -> bool:
        return value is BOT or isinstance(value, Fraction)

    def _add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def _mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def _neg(self, a: Fraction) -> Fraction:
        return -a

    def _inv(self, a: Fraction) -> QBot:
        if a == 0:
            return BOT
        return 1 / a

    def _sample_proper(self, rng: random.Random, bound: int) -> Fraction:
        denominator = 0
        while denominator == 0:
            denominator = rng.randint(-bound, bound)
        return Fraction(rng.randint(-bound, bound), denominator)

    def _parse_proper(self, text: str) -> Fraction:
        return _parse_rational(text, self.name)


class QZeroModel(QBotModel):
    """Rationals with the zero-totalized inverse (an involutive meadow)."""

    name = "qzero"
    has_bottom = False

    def contains(self, value: Value) -> bool:
        return isinstance(value, Fraction)

    def _inv(self, a: Fraction) -> Fraction:
        if a == 0:
            return Fraction(0)
        return 1 / a


class FpBotModel(Model):
    """A prime field extended with the additional value."""

    finite = True

    def __init__(self, p: int):
        if isinstance(p, bool) or not isinstance(p, int) or not isprime(p):
            raise UsageError(f"Modulus {p!r} is not a prime")
        self.p = p
        self.name = f"fp:{p}"

    @property
    def zero(self) -> FpElement:
        return FpElement(0, self.p)

    @property
    def one(self) -> FpElement:
        return FpElement(1 % self.p, self.p)

    def element(self, n: int) -> FpElement:
        return FpElement(n % self.p, self.p)

    def contains(self, value: Value) -> bool:
        return value is BOT or (isinstance(value, FpElement) and value.modulus == self.p)

    def _add(self, a: FpElement, b: FpElement) -> FpElement:
        return self.element(a.residue + b.residue)

    def _mul(self, a: FpElement, b: FpElement) -> FpElement:
        return self.element(a.residue * b.residue)

    def _neg(self, a: FpElement) -> FpElement:
        return self.element(-a.residue)

    def _inv(self, a: FpElement) -> FpBot:
        if a.residue == 0:
            return BOT
        return self.element(pow(a.residue, -1, self.p))

    def _carrier(self) -> List[FpElement]:
        return [FpElement(r, self.p) for r in range(self.p)]

    def _sample_proper(self, rng: random.Random, bound: int) -> FpElement:
        return self.element(rng.randrange(self.p))

    def _parse_proper(self, text: str) -> FpElement:
        match = _INTEGER_RE.match(text)
        if not match:
            raise UsageError(f"Cannot read '{text}' as a residue modulo {self.p}")
        return self.element(int(match.group(1)))


class TableModel(Model):
    """A finite model given by explicit operation tables on proper values."""

    finite = True

    def __init__(
        self,
        name: str,
        carrier: Sequence[Hashable],
        zero: Hashable,
        one: Hashable,
        add: Dict[Tuple[Hashable, Hashable], Value],
        mul: Dict[Tuple[Hashable, Hashable], Value],
        neg: Dict[Hashable, Value],
        inv: Dict[Hashable, Value],
        has_bottom: bool,
    ):
        self.name = name
        self.carrier = tuple(carrier)
        self._members = frozenset(self.carrier)
        self._zero = zero
        self._one = one
        self.add_table = dict(add)
        self.mul_table = dict(mul)
        self.neg_table = dict(neg)
        self.inv_table = dict(inv)
        self.has_bottom = has_bottom
        self._by_text = {str(element): element for element in self.carrier}

    @property
    def zero(self) -> Value:
        return self._zero

    @property
    def one(self) -> Value:
        return self._one

    def contains(self, value: Value) -> bool:
        if value is BOT:
            return self.has_bottom
        try:
            return value in self._members
        except TypeError:
            return False

    def _add(self, a, b):
        return self.add_table[(a, b)]

    def _mul(self, a, b):
        return self.mul_table[(a, b)]

    def _neg(self, a):
        return self.neg_table[a]

    def _inv(self, a):
        return self.inv_table[a]

    def _carrier(self) -> List[Value]:
        return list(self.carrier)

    def _sample_proper(self, rng: random.Random, bound: int) -> Value:
        return rng.choice(self.carrier)

    def _parse_proper(self, text: str) -> Value:
        if text in self._by_text:
            return self._by_text[text]
        raise UsageError(f"'{text}' is not an element of {self.name}; carrier is {sorted(self._by_text)}")


def totalize_field(p: int) -> FpBotModel:
    """Extend the prime field F_p with the additional value and 0^-1 = bottom."""
    model = FpBotModel(p)
    logger.debug("Totalized F_{} with an additional value", p)
    return model


def strip_bottom(model: Model, name: Optional[str] = None) -> TableModel:
    """
    Remove the additional value from a finite common meadow and redefine
    0^-1 = 0, giving an involutive meadow.

    Raises DomainError when the model does not behave like a field with an
    additional value (0 = 1, or proper values combining to bottom).
    """
    if not model.finite or not model.has_bottom:
        raise UsageError(f"strip_bottom needs a finite model with an additional value, got {model.name}")
    carrier = [element for element in model.elements() if element is not BOT]
    zero, one = model.zero, model.one
    if zero == one:
        raise DomainError(f"Model {model.name} satisfies 0 = 1")

    def proper(value, what):
        if value is BOT:
            raise DomainError(f"{what} is the additional value in {model.name}; not a field with an additional value")
        return value

    add = {(a, b): proper(model.add(a, b), f"{a} + {b}") for a in carrier for b in carrier}
    mul = {(a, b): proper(model.mul(a, b), f"{a} * {b}") for a in carrier for b in carrier}
    neg = {a: proper(model.neg(a), f"-{a}") for a in carrier}
    inv = {a: zero if a == zero else proper(model.inv(a), f"{a}^-1") for a in carrier}
    stripped = TableModel(name or f"strip({model.name})", carrier, zero, one, add, mul, neg, inv, has_bottom=False)
    logger.debug("Stripped the additional value from {} ({} elements left)", model.name, len(carrier))
    return stripped


def adjoin_bottom(meadow: Model, name: Optional[str] = None) -> TableModel:
    """Extend a finite involutive meadow with the additional value and 0^-1 = bottom."""
    if not meadow.finite or meadow.has_bottom:
        raise UsageError(f"adjoin_bottom needs a finite model without additional value, got {meadow.name}")
    carrier = meadow.elements()
    zero = meadow.zero
    add = {(a, b): meadow.add(a, b) for a in carrier for b in carrier}
    mul = {(a, b): meadow.mul(a, b) for a in carrier for b in carrier}
    neg = {a: meadow.neg(a) for a in carrier}
    inv = {a: BOT if a == zero else meadow.inv(a) for a in carrier}
    return TableModel(name or f"adjoin({meadow.name})", carrier, zero, meadow.one, add, mul, neg, inv, has_bottom=True)


def operation_tables(model: Model) -> Dict[str, Any]:
    """All operation tables of a finite model, keyed by operation name."""
    elements = model.elements()
    return {
        "carrier": tuple(elements),
        "zero": model.zero,
        "one": model.one,
        "add": {(a, b): model.add(a, b) for a in elements for b in elements},
        "mul": {(a, b): model.mul(a, b) for a in elements for b in elements},
        "neg": {a: model.neg(a) for a in elements},
        "inv": {a: model.inv(a) for a in elements},
    }


KNOWN_MODELS = "qbot, qzero, fp:<prime>, fp0:<prime>, fracpair"


def _modulus(name: str, text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"Model '{name}' needs an integer modulus after ':'") from None


def model_from_name(name: str) -> Model:
    """Resolve a model name as used on the command line."""
    key = name.strip().lower()
    if key == "qbot":
        return QBotModel()
    if key == "qzero":
        return QZeroModel()
    if key == "fracpair":
        from core.fracpair import FracpairModel

        return FracpairModel()
    if key.startswith("fp:"):
        return totalize_field(_modulus(name, key[3:]))
    if key.startswith("fp0:"):
        return strip_bottom(totalize_field(_modulus(name, key[4:])), name=key)
    raise UsageError(f"Unknown model '{name}'. Known models: {KNOWN_MODELS}")
