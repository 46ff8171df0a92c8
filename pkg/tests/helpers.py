"""Shared helpers for the test suite.

random_terms() is the one piece of machinery several test modules need: a
deterministic stream of random term ASTs with a bounded number of literal
leaves.  Everything is driven by an explicit random.Random so reruns see the
same terms.
"""

import random
from functools import lru_cache

from eqdom.catalog import by_name
from eqdom.terms import Const, Inverse, Product, Var


def random_term(rng, arity, order, max_leaves=8):
    """One random Term with 1..max_leaves variable/constant leaves."""
    return _build(rng, arity, order, rng.randint(1, max_leaves))


def _build(rng, arity, order, leaves):
    if leaves == 1:
        # bias toward variables so normalization has something to work on
        if rng.random() < 0.65:
            return Var(rng.randrange(arity))
        return Const(rng.randrange(order))
    if rng.random() < 0.25:
        return Inverse(_build(rng, arity, order, leaves))
    split = rng.randint(1, leaves - 1)
    return Product(
        _build(rng, arity, order, split),
        _build(rng, arity, order, leaves - split),
    )


def random_terms(seed, arity, order, count, max_leaves=8):
    rng = random.Random(seed)
    return [random_term(rng, arity, order, max_leaves) for _ in range(count)]


@lru_cache(maxsize=None)
def shared_term_batch(catalog_name, arity, count):
    """Fixed per-semigroup term batch, shared between test modules.

    The seed mixes the catalog name and arity so every semigroup sees its own
    stream but reruns are identical.
    """
    sg = by_name(catalog_name)
    seed = f"{catalog_name}/{arity}"
    return tuple(random_terms(seed, arity, sg.order, count))
