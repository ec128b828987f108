"""Brute-force oracles and seeded random generators shared by the tests.

The oracles deliberately avoid the library's focal-set shortcuts: belief and
plausibility are summed by visiting every one of the 2^N subsets, so they stay
independent of the code paths they check.
"""

import random
from math import fsum

from dnumbers import DNumber, Frame, NonExclusivityModel


def brute_bel(d: DNumber, subset) -> float:
    """Belief by direct summation over every subset of the frame."""
    a = d.frame.coerce(subset)
    total = 0.0
    for mask in range(1, d.frame.full_mask + 1):
        if mask & a == mask:
            total += d.weight(mask)
    return total


def brute_pl(d: DNumber, subset) -> float:
    """Plausibility by direct summation over every subset of the frame."""
    a = d.frame.coerce(subset)
    total = 0.0
    for mask in range(1, d.frame.full_mask + 1):
        if mask & a:
            total += d.weight(mask)
    return total


def random_complete(rng: random.Random, frame: Frame, max_focal: int = 4) -> DNumber:
    """A random complete assignment with weights bounded away from zero."""
    full = frame.full_mask
    k = rng.randint(1, min(max_focal, full))
    masks = rng.sample(range(1, full + 1), k)
    weights = [rng.uniform(0.05, 1.0) for _ in masks]
    total = fsum(weights)
    return DNumber(frame, {m: w / total for m, w in zip(masks, weights)})


def random_dnumber(rng: random.Random, frame: Frame, max_focal: int = 4) -> DNumber:
    """A random assignment, complete about a third of the time."""
    d = random_complete(rng, frame, max_focal)
    if rng.random() < 1 / 3:
        return d
    q = rng.uniform(0.1, 1.0)
    return DNumber(frame, {m: q * w for m, w in d.items()})


def random_model(rng: random.Random, frame: Frame, zero_prob: float = 0.3) -> NonExclusivityModel:
    """A random model: some element pairs stay exclusive, sometimes an override."""
    labels = frame.labels
    pairs = {}
    for i in range(len(labels)):
        for j in range(i + 1, len(labels)):
            if rng.random() >= zero_prob:
                pairs[(labels[i], labels[j])] = rng.random()
    overrides = {}
    if rng.random() < 0.3:
        full = frame.full_mask
        m1 = rng.randint(1, full)
        m2 = rng.randint(1, full) & ~m1 & full
        if m2:
            overrides[(m1, m2)] = rng.random()
    return NonExclusivityModel(frame, pairs, overrides)


def non_conflicting_pair(rng: random.Random, frame: Frame) -> tuple[DNumber, DNumber]:
    """Two complete assignments whose focal sets all share element 0 (K = 0)."""
    full = frame.full_mask

    def one() -> DNumber:
        k = rng.randint(1, min(4, full))
        masks = rng.sample(range(1, full + 1), k)
        masks = [m | 1 for m in masks]
        weights = [rng.uniform(0.05, 1.0) for _ in masks]
        total = fsum(weights)
        acc: dict[int, float] = {}
        for m, w in zip(masks, weights):
            acc[m] = acc.get(m, 0.0) + w / total
        return DNumber(frame, acc)

    return one(), one()
