import random

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from core.terms import BOTTOM, ONE, ZERO, Add, Inv, Mul, Neg, Var
from core.values import BOT, FpBotModel, QBotModel

settings.register_profile("meadow", deadline=None, max_examples=150)
settings.load_profile("meadow")

VARIABLES = ("x", "y", "z", "w")


def _extend(children):
    return st.one_of(
        st.builds(Add, children, children),
        st.builds(Mul, children, children),
        st.builds(Neg, children),
        st.builds(Inv, children),
    )


def term_strategy(with_bottom: bool = True, max_leaves: int = 8):
    leaves = [st.sampled_from([Var(name) for name in VARIABLES]), st.sampled_from([ZERO, ONE])]
    if with_bottom:
        leaves.append(st.just(BOTTOM))
    return st.recursive(st.one_of(*leaves), _extend, max_leaves=max_leaves)


terms = term_strategy()
proper_terms = term_strategy(with_bottom=False)

qbot_values = st.one_of(
    st.just(BOT),
    st.fractions(min_value=-9, max_value=9, max_denominator=9),
)


def qbot_assignments():
    return st.fixed_dictionaries({name: qbot_values for name in VARIABLES})


def fp_assignments(p: int):
    model = FpBotModel(p)
    return st.fixed_dictionaries({name: st.sampled_from(model.elements()) for name in VARIABLES})


def random_assignment(rng: random.Random, model, bot_probability: float = 0.2):
    return {name: model.sample(rng, 9, bot_probability) for name in VARIABLES}


@pytest.fixture
def qbot():
    return QBotModel()


@pytest.fixture
def f5():
    return FpBotModel(5)


@pytest.fixture
def f7():
    return FpBotModel(7)


def random_term(rng: random.Random, size: int):
    """A seeded term with the given number of nodes, built without the additional value."""
    if size <= 1:
        return rng.choice([Var(name) for name in VARIABLES] + [ZERO, ONE])
    kind = rng.randrange(4)
    if kind == 0:
        return Neg(random_term(rng, size - 1))
    if kind == 1:
        return Inv(random_term(rng, size - 1))
    split = rng.randint(1, size - 1)
    node = Add if kind == 2 else Mul
    return node(random_term(rng, split), random_term(rng, size - split))
