"""
Fracpairs over the integers: the initial common meadow.

A fracpair p/q is taken modulo the congruence generated by

    (x*z) / (y*(z*z)) = x / (y*z)

Read left to right this divides out a prime l whenever l | p and l^2 | q.
Canonical pairs have q > 0 and admit no such l; every pair with q = 0 is
the additional value.
"""
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Tuple, Union

from loguru import logger
from sympy import factorint

from core.errors import DomainError, UsageError
from core.values import BOT, Bottom, Model, QBot, Value

CAP_BITS = 63

_Pair = Tuple[int, int]


@dataclass(frozen=True)
class Fracpair:
    """A canonical fracpair; build through canon()."""

    p: int
    q: int

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


FracpairValue = Union[Fracpair, Bottom]


def _valuation(n: int, prime: int) -> int:
    count = 0
    while n and n % prime == 0:
        n //= prime
        count += 1
    return count


def canon(p: int, q: int, cap_bits: int = CAP_BITS) -> FracpairValue:
    """Canonical representative of the class of p/q."""
    if q == 0:
        return BOT
    if abs(q) >= 1 << cap_bits:
        raise DomainError(f"Fracpair denominator of {p}/{q} exceeds the {cap_bits}-bit bound")
    if q < 0:
        p, q = -p, -q
    for prime, exponent in factorint(q).items():
        if exponent < 2:
            continue
        if p == 0:
            k = exponent - 1
        else:
            k = min(_valuation(p, prime), exponent - 1)
        if k:
            p //= prime ** k
            q //= prime ** k
    return Fracpair(p, q)


def _pair(a: Fracpair) -> _Pair:
    return a.p, a.q


def fp_add(a: FracpairValue, b: FracpairValue, cap_bits: int = CAP_BITS) -> FracpairValue:
    """
    p/q + r/s = (p*s + r*q) / (q*s), canonicalized.

    Args:
        a: Left fracpair or BOT
        b: Right fracpair or BOT
        cap_bits: Largest allowed denominator, in bits

    Returns:
        The canonical sum; BOT when either side is BOT
    """
    if a is BOT or b is BOT:
        return BOT
    (p, q), (r, s) = _pair(a), _pair(b)
    return canon(p * s + r * q, q * s, cap_bits)


def fp_mul(a: FracpairValue, b: FracpairValue, cap_bits: int = CAP_BITS) -> FracpairValue:
    """p/q * r/s = (p*r) / (q*s), canonicalized."""
    if a is BOT or b is BOT:
        return BOT
    (p, q), (r, s) = _pair(a), _pair(b)
    return canon(p * r, q * s, cap_bits)


def fp_neg(a: FracpairValue, cap_bits: int = CAP_BITS) -> FracpairValue:
    """-(p/q) = (-p)/q."""
    if a is BOT:
        return BOT
    return canon(-a.p, a.q, cap_bits)


def fp_inv(a: FracpairValue, cap_bits: int = CAP_BITS) -> FracpairValue:
    """(p/q)^-1 = (q*q)/(p*q); the inverse of 0/q is the additional value."""
    if a is BOT:
        return BOT
    return canon(a.q * a.q, a.p * a.q, cap_bits)


def to_qbot(a: FracpairValue) -> QBot:
    """The homomorphic image in the rationals with the additional value."""
    if a is BOT:
        return BOT
    return Fraction(a.p, a.q)


def reductions(p: int, q: int, zmax: int) -> Iterator[_Pair]:
    """
    Every pair reachable from p/q by one left-to-right rule application
    (x*z)/(y*(z*z)) -> x/(y*z) with 2 <= |z| <= zmax.
    """
    for magnitude in range(2, zmax + 1):
        square = magnitude * magnitude
        if p % magnitude or q % square:
            continue
        for z in (magnitude, -magnitude):
            yield p // z, q // z


def normal_forms_by_search(p: int, q: int, zmax: int) -> List[_Pair]:
    """All irreducible pairs reachable from p/q by rule applications."""
    seen = {(p, q)}
    stack = [(p, q)]
    irreducible = []
    while stack:
        current = stack.pop()
        successors = list(reductions(*current, zmax))
        if not successors:
            irreducible.append(current)
        for successor in successors:
            if successor not in seen:
                seen.add(successor)
                stack.append(successor)
    return irreducible


def parse_fracpair(text: str) -> FracpairValue:
    """Read 'p/q', 'p' or the additional value; the result is canonical."""
    stripped = text.strip()
    if stripped in ("_|_", "bot"):
        return BOT
    numerator, _, denominator = stripped.partition("/")
    try:
        p = int(numerator)
        q = int(denominator) if denominator else 1
    except ValueError:
        raise UsageError(f"Cannot read '{text}' as a fracpair (expected p/q)") from None
    return canon(p, q)


class FracpairModel(Model):
    """The fracpair algebra over the integers as a common-meadow model."""

    name = "fracpair"

    def __init__(self, cap_bits: int = CAP_BITS):
        self.cap_bits = cap_bits

    @property
    def zero(self) -> Fracpair:
        return Fracpair(0, 1)

    @property
    def one(self) -> Fracpair:
        return Fracpair(1, 1)

    def contains(self, value: Value) -> bool:
        return value is BOT or isinstance(value, Fracpair)

    def _add(self, a, b):
        return fp_add(a, b, self.cap_bits)

    def _mul(self, a, b):
        return fp_mul(a, b, self.cap_bits)

    def _neg(self, a):
        return fp_neg(a, self.cap_bits)

    def _inv(self, a):
        return fp_inv(a, self.cap_bits)

    def boundary_values(self) -> List[Value]:
        return [canon(0, 1), canon(1, 1), canon(-1, 1), canon(2, 1), canon(2, 2), canon(1, 2), BOT]

    def _sample_proper(self, rng: random.Random, bound: int) -> Fracpair:
        return canon(rng.randint(-bound, bound), rng.randint(1, bound))

    def _parse_proper(self, text: str) -> Fracpair:
        value = parse_fracpair(text)
        if value is BOT:
            raise UsageError(f"Zero denominator in '{text}'; write _|_ for the additional value")
        logger.trace("Parsed fracpair {} from '{}'", value, text)
        return value
