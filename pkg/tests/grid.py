"""The seeded grid of 20 valid orders shared by the acceptance criteria."""
import random

from hyperbessel.params import validate_order

SEED = 20241016
SIZE = 20


def acceptance_grid():
    rng = random.Random(SEED)
    out = []
    for _ in range(SIZE):
        d = rng.choice((1, 2, 3))
        out.append(validate_order(d, [round(rng.uniform(-0.9, 3.0), 6) for _ in range(d)]))
    return out


GRID = acceptance_grid()
