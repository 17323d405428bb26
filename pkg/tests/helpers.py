import functools
from collections import Counter

from hypothesis import strategies as st

from cdgacalc.exactfield import Field

COUNTS = Counter()
ACCEPTANCE = {}           # criterion number -> one-line verdict

FIELDS = [Field(0), Field(2), Field(3), Field(5), Field(7)]


def counted(fn):
    """Record how many cases a property actually ran."""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        COUNTS[fn.__name__] += 1
        return fn(*args, **kwargs)
    return wrapper


seeds = st.integers(min_value=0, max_value=2**32 - 1)
fields = st.sampled_from(FIELDS)


def random_algebra(rng, F, truncation=8, mode="gc", max_gens=4):
    from cdgacalc.gradedalg import DIVIDED, EXTERIOR, KOSZUL, GradedAlgebra

    gens = []
    for i in range(rng.randint(1, max_gens)):
        deg = rng.randint(1, 4)
        flavor = KOSZUL
        if mode == "gc":
            r = rng.random()
            if r < 0.25:
                flavor = EXTERIOR
            elif r < 0.4 and deg % 2 == 0:
                flavor = DIVIDED
        gens.append((f"x{i}", deg, flavor))
    return GradedAlgebra(F, tuple(gens), mode, truncation)


def random_homogeneous(alg, rng, n, terms=3):
    from cdgacalc.cdga import random_element

    return random_element(alg, n, rng, terms)
