"""
Validity of equations in common cancellation meadows of characteristic zero.

Both sides are brought to fraction normal form. Two non-bottom forms
(n_t, d_t, s_t) and (n_r, d_r, s_r) are equal in every such meadow iff

    p2: s_t == s_r
    p1: radical(d_t) == radical(d_r)
    p3: n_t * d_r == n_r * d_t

Conditions are tested in that order and the first failure is reported.
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from loguru import logger

from core.normal import FNF, to_fraction
from core.poly import MultiPoly, radical
from core.terms import Assignment, Term, evaluate, variables
from core.values import BOT, QBotModel

DEFAULT_BUDGET = 5000
DEFAULT_GRID_BOUND = 12


class Reason(str, Enum):
    BOTTOM_MISMATCH = "bottom-mismatch"
    P1 = "p1"
    P2 = "p2"
    P3 = "p3"


@dataclass(frozen=True)
class Verdict:
    equal: bool
    reason: Optional[Reason] = None
    witness: Optional[Assignment] = None
    polys: Optional[Tuple[MultiPoly, MultiPoly]] = None
    note: str = ""
    forms: Tuple[Any, Any] = field(default=(None, None), compare=False)

    @property
    def headline(self) -> str:
        return "EQUAL" if self.equal else f"NOT-EQUAL ({self.reason.value})"

    def render(self) -> str:
        lines = [self.headline]
        if self.witness is not None:
            lines.append(f"counterexample: {render_assignment(self.witness)}")
        elif self.note:
            lines.append(f"note: {self.note}")
        return "\n".join(lines)

    def to_record(self) -> Dict[str, Any]:
        return {
            "verdict": "equal" if self.equal else "not-equal",
            "reason": self.reason.value if self.reason else None,
            "witness": render_assignment(self.witness) if self.witness is not None else None,
            "polys": [str(p) for p in self.polys] if self.polys else None,
            "note": self.note,
        }


def render_assignment(assignment: Assignment) -> str:
    return ", ".join(f"{name}={assignment[name]}" for name in sorted(assignment))


def _compare_forms(ft: FNF, fr: FNF) -> Verdict:
    if ft is BOT and fr is BOT:
        return Verdict(True)
    if ft is BOT or fr is BOT:
        return Verdict(False, Reason.BOTTOM_MISMATCH, note="exactly one side is the additional value")
    if ft.support != fr.support:
        difference = sorted(ft.support ^ fr.support)
        return Verdict(False, Reason.P2, note=f"variables differ: {', '.join(difference)}")
    rt, rr = radical(ft.den), radical(fr.den)
    if rt != rr:
        return Verdict(False, Reason.P1, polys=(rt, rr), note="denominators vanish at different points")
    left, right = ft.num * fr.den, fr.num * ft.den
    if left != right:
        return Verdict(False, Reason.P3, polys=(left, right), note="cross products differ")
    return Verdict(True)


def equal_ccm0(
    t: Term,
    r: Term,
    budget: int = DEFAULT_BUDGET,
    search: bool = True,
    grid_bound: int = DEFAULT_GRID_BOUND,
) -> Verdict:
    """Decide t = r; on failure, look for a rational counterexample."""
    ft, fr = to_fraction(t), to_fraction(r)
    verdict = _compare_forms(ft, fr)
    verdict = Verdict(verdict.equal, verdict.reason, None, verdict.polys, verdict.note, (ft, fr))
    logger.debug("decide {} = {}: {}", t, r, verdict.headline)
    if verdict.equal or not search:
        return verdict
    witness = counterexample_search(t, r, budget, verdict, grid_bound)
    if witness is None:
        note = f"{verdict.note}; no counterexample within {budget} grid points"
        if verdict.reason is Reason.P1:
            note += " (the denominators may differ only at irrational points)"
        return Verdict(False, verdict.reason, None, verdict.polys, note, verdict.forms)
    return Verdict(False, verdict.reason, witness, verdict.polys, verdict.note, verdict.forms)


# -- counterexamples -------------------------------------------------------

def grid_values(bound: int = DEFAULT_GRID_BOUND) -> List[Fraction]:
    """Rationals a/b with |a|, b <= bound, ordered by height max(|a|, b)."""
    values = [Fraction(0)]
    seen = set(values)
    for height in range(1, bound + 1):
        pairs = [(height, b) for b in range(1, height + 1)] + [(a, height) for a in range(1, height)]
        for a, b in pairs:
            for signed in (a, -a):
                value = Fraction(signed, b)
                if value not in seen:
                    seen.add(value)
                    values.append(value)
    return values


def grid_points(names: Sequence[str], bound: int = DEFAULT_GRID_BOUND) -> Iterator[Dict[str, Fraction]]:
    """Points of the grid in growing shells, so small points come first."""
    if not names:
        yield {}
        return
    values = grid_values(bound)
    for size in range(1, len(values) + 1):
        newest = values[size - 1]
        for point in product(values[:size], repeat=len(names)):
            if newest in point:
                yield dict(zip(names, point))


def _certifies(reason: Reason, left, right) -> bool:
    if reason is Reason.P3:
        return left is not BOT and right is not BOT and left != right
    if reason is Reason.P1:
        return (left is BOT) != (right is BOT)
    return left != right


def counterexample_search(
    t: Term,
    r: Term,
    budget: int = DEFAULT_BUDGET,
    verdict: Optional[Verdict] = None,
    grid_bound: int = DEFAULT_GRID_BOUND,
) -> Optional[Assignment]:
    """
    Best-effort search for an assignment over the rationals with the
    additional value at which t and r evaluate differently. Returns None
    when nothing is found within budget.
    """
    model = QBotModel()
    if verdict is None:
        verdict = equal_ccm0(t, r, budget, search=False)
        if verdict.equal:
            return None
    names = sorted(variables(t) | variables(r))
    reason = verdict.reason
    fixed: Dict[str, Any] = {}
    free = names
    if reason is Reason.P2:
        ft, fr = verdict.forms
        if ft is None:
            ft, fr = to_fraction(t), to_fraction(r)
        distinguishing = sorted(ft.support ^ fr.support)[0]
        fixed = {distinguishing: BOT}
        free = [name for name in names if name != distinguishing]
    tried = 0
    for point in grid_points(free, grid_bound):
        if tried >= budget:
            break
        tried += 1
        assignment = {**point, **fixed}
        left, right = evaluate(t, assignment, model), evaluate(r, assignment, model)
        if _certifies(reason, left, right):
            logger.debug("Counterexample after {} points: {}", tried, render_assignment(assignment))
            return assignment
    return None
