import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from logag import Grade, Individual, Atom, And, Or, Not, TRUE, Theory, parse_theory, parse_rules

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def penguin_brother():
    return parse_theory((DATA / "penguin_brother.logag").read_text())


@pytest.fixture(scope="session")
def ot1():
    return parse_theory((DATA / "ot1.logag").read_text())


@pytest.fixture(scope="session")
def ot2():
    return parse_theory((DATA / "ot2.logag").read_text())


@pytest.fixture(scope="session")
def penguin_rules():
    return parse_rules((DATA / "penguin.rules").read_text())


@pytest.fixture(scope="session")
def penguin_rules_theory(penguin_rules):
    from logag import default_indexing, translate

    return translate(penguin_rules, default_indexing(penguin_rules))


# -- random generators (seeded per test) ------------------------------------


def random_term(rng, atoms, depth, allow_grades):
    if depth <= 0 or rng.random() < 0.35:
        return Atom(rng.choice(atoms))
    roll = rng.random()
    if roll < 0.25:
        return Not(random_term(rng, atoms, depth - 1, allow_grades))
    if roll < 0.55:
        return And(
            random_term(rng, atoms, depth - 1, allow_grades),
            random_term(rng, atoms, depth - 1, allow_grades),
        )
    if roll < 0.85 or not allow_grades:
        return Or(
            random_term(rng, atoms, depth - 1, allow_grades),
            random_term(rng, atoms, depth - 1, allow_grades),
        )
    inner = random_term(rng, atoms, depth - 1, allow_grades)
    out = Grade(inner, Fraction(rng.randint(1, 5)))
    if rng.random() < 0.3:
        out = Grade(out, Fraction(rng.randint(1, 5)))
    return out


def random_theory(rng, *, n_terms, atoms, allow_grades, name="random"):
    terms = {
        random_term(rng, atoms, rng.randint(1, 3), allow_grades)
        for _ in range(n_terms)
    }
    return Theory(name=name, domains=(), terms=frozenset(terms))


@pytest.fixture
def rng(request):
    return random.Random(f"logag::{request.node.name}")
