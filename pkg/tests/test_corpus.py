"""The random-instance generator: validity, bounds, determinism."""

import random

from ainfinity.ainfty import check_structure
from ainfinity.corpus import random_dga
from ainfinity.fields import PrimeField
from ainfinity.graded import ChainComplex
from ainfinity.retracts import harmonious_retract


def test_instances_are_valid_structures():
    for seed in range(40):
        mu = random_dga(random.Random(seed))
        assert check_structure(mu, 4).ok, seed


def test_instances_respect_bounds():
    for seed in range(40):
        mu = random_dga(random.Random(seed))
        assert mu.carrier.total_dim <= 6
        assert all(-3 <= d <= 3 for d in mu.carrier.degrees())


def test_generator_is_deterministic():
    for seed in (0, 7, 123):
        a = random_dga(random.Random(seed))
        b = random_dga(random.Random(seed))
        assert a == b


def test_some_instances_have_products_and_interesting_homotopy():
    with_products = 0
    with_h = 0
    for seed in range(40):
        mu = random_dga(random.Random(seed))
        if mu.products:
            with_products += 1
        retract = harmonious_retract(ChainComplex(mu.carrier, mu.differential))
        if not retract.h.is_zero():
            with_h += 1
    assert with_products >= 20
    assert with_h >= 15


def test_generator_over_prime_field():
    mu = random_dga(random.Random(3), field=PrimeField(7))
    assert check_structure(mu, 4).ok
