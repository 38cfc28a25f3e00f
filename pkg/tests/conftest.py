"""Shared helpers for the test suite: tiny hand-built instances and a
deterministic random map generator."""

import random

from ainfinity.ainfty import AInfinity
from ainfinity.graded import GradedModule, MultiMap


def random_multimap(rng, source, target, arity, degree, density=0.5, cmax=3):
    """A random homogeneous map, sparse, with small integer coefficients."""
    one = source.field.one
    table = {}
    words = [()]
    for _ in range(arity):
        words = [w + (b,) for w in words for b in source.basis()]
    for w in words:
        out_degree = sum(b[0] for b in w) + degree
        choices = [(out_degree, i) for i in range(target.dim(out_degree))]
        if not choices:
            continue
        vec = {}
        for b in choices:
            if rng.random() < density:
                c = rng.randint(-cmax, cmax)
                if c:
                    vec[b] = c * one
        if vec:
            table[w] = vec
    return MultiMap(source, target, arity, degree, table)


def two_dim_complex(field=None):
    """Basis e (degree 0), b (degree 1); d(b) = e."""
    kwargs = {} if field is None else {"field": field}
    V = GradedModule({0: 1, 1: 1}, **kwargs)
    one = V.field.one
    d = MultiMap(V, V, 1, -1, {((1, 0),): {(0, 0): one}})
    return V, d


def dga_without_leibniz(truncation=4):
    """Associative mu_2 whose differential is not a derivation.

    Basis a (degree 1), b (degree 0); d(a) = b, b.b = b, a.b = a.
    The relation fails on the pair (b, a) at arity 2 only.
    """
    V = GradedModule({0: 1, 1: 1})
    one = V.field.one
    a, b = (1, 0), (0, 0)
    d = MultiMap(V, V, 1, -1, {(a,): {b: one}})
    mu2 = MultiMap(V, V, 2, 0, {(b, b): {b: one}, (a, b): {a: one}})
    return AInfinity(V, d, {2: mu2}, truncation)


def one_point_dga(truncation=4):
    """Basis b (degree 0), d = 0, b.b = b.  A strictly associative DGA."""
    V = GradedModule({0: 1})
    one = V.field.one
    b = (0, 0)
    d = MultiMap.zero(V, V, 1, -1)
    mu2 = MultiMap(V, V, 2, 0, {(b, b): {b: one}})
    return AInfinity(V, d, {2: mu2}, truncation)


def chain_complex_ainfty(module, d, truncation=4):
    return AInfinity(module, d, {}, truncation)


def seeded(seed=7):
    return random.Random(seed)
