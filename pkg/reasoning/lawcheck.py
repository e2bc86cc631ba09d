"""
Model-level checking of equations, conditional laws and implications
between laws.

Laws are written as text::

    x * x^-1 = 1 + 0 * x^-1
    x != 0 & x != bot -> x * x^-1 = 1

Exhaustive checks enumerate every assignment over a finite carrier
(additional value included); random checks try the boundary combinations
first and then seeded samples. A failure is re-evaluated before it is
reported.
"""
import random
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from loguru import logger

from core.errors import ParseError, UsageError
from core.terms import Assignment, Term, contains_bottom, evaluate, parse, variables
from core.values import Model

DEFAULT_SEED = 20140101
DEFAULT_CASES = 10000

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass(frozen=True)
class Premise:
    lhs: Term
    rhs: Term
    negated: bool = False

    def holds(self, assignment: Assignment, model: Model) -> bool:
        equal = evaluate(self.lhs, assignment, model) == evaluate(self.rhs, assignment, model)
        return not equal if self.negated else equal

    def __str__(self) -> str:
        return f"{self.lhs} {'!=' if self.negated else '='} {self.rhs}"


def _parse_atom(text: str, law: str) -> Premise:
    if "!=" in text:
        left, _, right = text.partition("!=")
        negated = True
    elif "=" in text:
        left, _, right = text.partition("=")
        negated = False
    else:
        raise ParseError(f"Law '{law}': expected '=' or '!=' in '{text.strip()}'")
    return Premise(parse(left.strip()), parse(right.strip()), negated)


@dataclass(frozen=True)
class Law:
    """A conclusion equation guarded by zero or more premises."""

    name: str
    lhs: Term
    rhs: Term
    premises: Tuple[Premise, ...] = ()

    @classmethod
    def parse(cls, name: str, text: str) -> "Law":
        guard, arrow, body = text.partition("->")
        if not arrow:
            guard, body = "", text
        conclusion = _parse_atom(body, name)
        if conclusion.negated:
            raise ParseError(f"Law '{name}': the conclusion must be an equation")
        premises = tuple(_parse_atom(part, name) for part in guard.split("&")) if guard.strip() else ()
        return cls(name, conclusion.lhs, conclusion.rhs, premises)

    @property
    def is_conditional(self) -> bool:
        return bool(self.premises)

    @property
    def variables(self) -> List[str]:
        names = variables(self.lhs) | variables(self.rhs)
        for premise in self.premises:
            names |= variables(premise.lhs) | variables(premise.rhs)
        return sorted(names)

    @property
    def mentions_bottom(self) -> bool:
        terms = [self.lhs, self.rhs] + [t for p in self.premises for t in (p.lhs, p.rhs)]
        return any(contains_bottom(t) for t in terms)

    def __str__(self) -> str:
        conclusion = f"{self.lhs} = {self.rhs}"
        if not self.premises:
            return conclusion
        return " & ".join(str(p) for p in self.premises) + f" -> {conclusion}"


@dataclass(frozen=True)
class LawImplication:
    """Models satisfying every premise law must satisfy the conclusion."""

    name: str
    premises: Tuple[str, ...]
    conclusion: Law

    def __str__(self) -> str:
        return f"{' + '.join(self.premises)} => {self.conclusion}"


SuiteEntry = Union[Law, LawImplication]


@dataclass(frozen=True)
class Strategy:
    kind: str
    cases: int = 0
    seed: int = DEFAULT_SEED
    assignments: Tuple[Assignment, ...] = ()
    bot_probability: float = 0.15
    sample_bound: int = 9
    boundary_first: bool = True

    @classmethod
    def exhaustive(cls) -> "Strategy":
        return cls("exhaustive")

    @classmethod
    def random(cls, cases: int = DEFAULT_CASES, seed: int = DEFAULT_SEED, **options) -> "Strategy":
        if cases < 1:
            raise UsageError(f"A random strategy needs at least one case, got {cases}")
        return cls("random", cases, seed, **options)

    @classmethod
    def given(cls, assignments: Sequence[Assignment]) -> "Strategy":
        return cls("given", len(assignments), assignments=tuple(assignments))

    @classmethod
    def parse(cls, text: str, seed: int = DEFAULT_SEED, **options) -> "Strategy":
        """Read ``exhaustive``, ``random`` or ``random:<n>``."""
        key = text.strip().lower()
        if key == "exhaustive":
            return cls.exhaustive()
        if key == "random":
            return cls.random(options.pop("cases", DEFAULT_CASES), seed, **options)
        if key.startswith("random:"):
            options.pop("cases", None)
            try:
                cases = int(key[len("random:"):])
            except ValueError:
                raise UsageError(f"Bad case count in strategy '{text}'") from None
            return cls.random(cases, seed, **options)
        raise UsageError(f"Unknown strategy '{text}'. Use exhaustive or random:<n>")

    def describe(self) -> str:
        if self.kind == "random":
            return f"random({self.cases}, seed={self.seed})"
        if self.kind == "given":
            return f"given({len(self.assignments)})"
        return self.kind

    def assignments_for(self, names: Sequence[str], model: Model) -> Iterator[Assignment]:
        carrier = model.elements() if self.kind == "exhaustive" else None
        if not names and self.kind != "given":
            yield {}
            return
        if carrier is not None:
            for values in product(carrier, repeat=len(names)):
                yield dict(zip(names, values))
        elif self.kind == "given":
            yield from self.assignments
        else:
            yield from self._random_assignments(names, model)

    def _random_assignments(self, names: Sequence[str], model: Model) -> Iterator[Assignment]:
        produced = 0
        if self.boundary_first:
            for values in product(model.boundary_values(), repeat=len(names)):
                if produced >= self.cases:
                    return
                produced += 1
                yield dict(zip(names, values))
        rng = random.Random(self.seed)
        while produced < self.cases:
            produced += 1
            yield {name: model.sample(rng, self.sample_bound, self.bot_probability) for name in names}


@dataclass
class CheckReport:
    law: str
    model: str
    strategy: str
    outcome: str
    witness: Optional[Assignment] = None
    cases: int = 0
    note: str = ""
    witness_text: str = field(default="", repr=False)

    @property
    def passed(self) -> bool:
        return self.outcome != FAIL

    def to_record(self) -> Dict[str, Any]:
        return {
            "law": self.law,
            "model": self.model,
            "strategy": self.strategy,
            "outcome": self.outcome,
            "witness": self.witness_text,
            "cases": self.cases,
            "note": self.note,
        }


def _render_witness(model: Model, assignment: Assignment) -> str:
    return ", ".join(f"{name}={model.render_value(assignment[name])}" for name in sorted(assignment))


def _skip(law: Law, model: Model, strategy: Strategy) -> Optional[CheckReport]:
    if law.mentions_bottom and not model.has_bottom:
        return CheckReport(law.name, model.name, strategy.describe(), SKIP, note="mentions the additional value")
    return None


def _run(law: Law, model: Model, strategy: Strategy) -> CheckReport:
    skipped = _skip(law, model, strategy)
    if skipped:
        return skipped
    names = law.variables
    cases = 0
    premise_hits = 0
    for assignment in strategy.assignments_for(names, model):
        cases += 1
        if not all(premise.holds(assignment, model) for premise in law.premises):
            continue
        premise_hits += 1
        left = evaluate(law.lhs, assignment, model)
        right = evaluate(law.rhs, assignment, model)
        if left == right:
            continue
        # re-verify before emitting
        if evaluate(law.lhs, assignment, model) != evaluate(law.rhs, assignment, model):
            witness_text = _render_witness(model, assignment)
            note = f"{model.render_value(left)} != {model.render_value(right)}"
            logger.info("{} fails in {} at {}", law.name, model.name, witness_text or "the closed instance")
            return CheckReport(law.name, model.name, strategy.describe(), FAIL, dict(assignment), cases, note, witness_text)
    note = ""
    if law.is_conditional and premise_hits == 0:
        note = "premises never held"
    return CheckReport(law.name, model.name, strategy.describe(), PASS, None, cases, note)


def check_equation(model: Model, lhs: Term, rhs: Term, strategy: Strategy, name: Optional[str] = None) -> CheckReport:
    return _run(Law(name or f"{lhs} = {rhs}", lhs, rhs), model, strategy)


def check_conditional(model: Model, law: Law, strategy: Strategy) -> CheckReport:
    return _run(law, model, strategy)


def check_implication(
    model: Model,
    implication: LawImplication,
    strategy: Strategy,
    laws: Optional[Dict[str, Law]] = None,
) -> CheckReport:
    """Check the conclusion only when the model satisfies every premise law."""
    laws = laws or laws_by_name()
    for premise in implication.premises:
        if premise not in laws:
            raise UsageError(f"Implication {implication.name} refers to unknown law '{premise}'")
        report = _run(laws[premise], model, strategy)
        if report.outcome != PASS:
            return CheckReport(
                implication.name,
                model.name,
                strategy.describe(),
                PASS if report.outcome == FAIL else SKIP,
                cases=report.cases,
                note=f"premise {premise} {report.outcome}s in this model",
            )
    report = _run(implication.conclusion, model, strategy)
    report.law = implication.name
    return report


def check_entry(model: Model, entry: SuiteEntry, strategy: Strategy, laws: Optional[Dict[str, Law]] = None) -> CheckReport:
    if isinstance(entry, LawImplication):
        return check_implication(model, entry, strategy, laws)
    return check_conditional(model, entry, strategy)


# -- builtin suites --------------------------------------------------------

_MD = [
    ("md1", "(x + y) + z = x + (y + z)"),
    ("md2", "x + y = y + x"),
    ("md3", "x + 0 = x"),
    ("md4", "x + -x = 0"),
    ("md5", "(x * y) * z = x * (y * z)"),
    ("md6", "x * y = y * x"),
    ("md7", "1 * x = x"),
    ("md8", "x * (y + z) = x * y + x * z"),
    ("md9", "(x^-1)^-1 = x"),
    ("md10", "x * (x * x^-1) = x"),
]

_MD_BOT = [
    ("ax1", "(x + y) + z = x + (y + z)"),
    ("ax2", "x + y = y + x"),
    ("ax3", "x + 0 = x"),
    ("ax4", "x + -x = 0 * x"),
    ("ax5", "(x * y) * z = x * (y * z)"),
    ("ax6", "x * y = y * x"),
    ("ax7", "1 * x = x"),
    ("ax8", "x * (y + z) = x * y + x * z"),
    ("ax9", "-(-x) = x"),
    ("ax10", "0 * (x * x) = 0 * x"),
    ("ax11", "(x^-1)^-1 = x + 0 * x^-1"),
    ("ax12", "x * x^-1 = 1 + 0 * x^-1"),
    ("ax13", "(x * y)^-1 = x^-1 * y^-1"),
    ("ax14", "1^-1 = 1"),
    ("ax15", "0^-1 = bot"),
    ("ax16", "x + bot = bot"),
    ("ax17", "x * bot = bot"),
]

_PROP1 = [
    ("e1", "0 * 0 = 0"),
    ("e2", "-0 = 0"),
    ("e3", "0 * x = 0 * -x"),
    ("e4", "0 * (x * y) = 0 * (x + y)"),
    ("e5", "-(x * y) = x * -y"),
    ("e6", "-1 * x = -x"),
    ("e7", "(-x)^-1 = -(x^-1)"),
    ("e8", "(x * x^-1) * x^-1 = x^-1"),
    ("e9", "-bot = bot"),
    ("e10", "bot^-1 = bot"),
]

_PROP2 = [
    ("ce1", "x * y = 1 -> 0 * y = 0"),
    ("ce2", "x * y = 1 -> x^-1 = y"),
    ("ce3", "0 * x = 0 * y -> 0 * (x * y) = 0 * x"),
    ("ce4", "0 * x * y = 0 -> 0 * x = 0"),
    ("ce5", "0 * (x + y) = 0 -> 0 * x = 0"),
    ("ce6", "0 * x^-1 = 0 -> 0 * x = 0"),
    ("ce7", "0 * x = bot -> x = bot"),
]

_LAWS = [
    ("NVL", "x != bot -> 0 * x = 0"),
    ("AVL", "x^-1 = bot -> 0 * x = x"),
    ("CIL", "x != 0 & x != bot -> x * x^-1 = 1"),
    ("ICL", "x != 0 & x != bot & x^-1 * y = x^-1 * z -> y = z"),
    ("CL", "x != 0 & x * y = x * z -> y = z"),
]


def _laws(table: Sequence[Tuple[str, str]]) -> List[Law]:
    return [Law.parse(name, text) for name, text in table]


def _prop4() -> List[LawImplication]:
    laws = laws_by_name()
    return [
        LawImplication("prop4.1", ("NVL",), Law.parse("prop4.1", "x * y = bot & x != bot -> y = bot")),
        LawImplication("prop4.2", ("NVL",), Law.parse("prop4.2", "x^-1 != bot -> 0 * x = 0")),
        LawImplication("prop4.3", ("NVL", "AVL"), laws["CIL"]),
        LawImplication("prop4.4", ("CIL",), laws["NVL"]),
        LawImplication("prop4.5", ("CIL",), laws["AVL"]),
    ]


def c0_instances(nmax: int) -> List[Law]:
    """(n+1) * (n+1)^-1 = 1 for n = 0 .. nmax."""
    return [Law.parse(f"C0({n + 1})", f"{n + 1} * {n + 1}^-1 = 1") for n in range(nmax + 1)]


def laws_by_name() -> Dict[str, Law]:
    return {law.name: law for law in _laws(_MD_BOT + _PROP1 + _PROP2 + _LAWS)}


def builtin_suites(nmax: int = 10) -> Dict[str, List[SuiteEntry]]:
    return {
        "md": _laws(_MD),
        "md_bot": _laws(_MD_BOT),
        "prop1": _laws(_PROP1),
        "prop2": _laws(_PROP2),
        "laws": _laws(_LAWS),
        "prop4": _prop4(),
        "c0": c0_instances(nmax),
    }


def run_suite(model: Model, suite: str, strategy: Strategy, nmax: int = 10) -> List[CheckReport]:
    suites = builtin_suites(nmax)
    if suite not in suites:
        raise UsageError(f"Unknown suite '{suite}'. Known suites: {', '.join(suites)}")
    laws = laws_by_name()
    reports = [check_entry(model, entry, strategy, laws) for entry in suites[suite]]
    failed = sum(not report.passed for report in reports)
    logger.debug("Suite {} on {}: {} checks, {} failed", suite, model.name, len(reports), failed)
    return reports
