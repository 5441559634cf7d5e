"""Deterministic random generators for test and self-test suites."""

from __future__ import annotations

from fractions import Fraction

from .rings import (
    IntegersMod,
    Poly,
    PrimeField,
    RationalRing,
    RingValue,
    Z,
)


def random_bottom(rng, ring):
    if ring == Z:
        return ring.val(rng.randint(-9, 9))
    if isinstance(ring, RationalRing):
        return ring.val(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
    if isinstance(ring, (PrimeField, IntegersMod)):
        return ring.from_int(rng.randint(0, ring.m - 1))
    raise TypeError(f"no sampler for bottom ring {ring!r}")


def random_element(rng, ring):
    """A random element of any ring in the flattening hierarchy."""
    bot = ring.bottom()
    if ring == bot:
        return random_bottom(rng, ring)
    vec = [random_bottom(rng, bot).payload for _ in range(ring.flat_rank())]
    return RingValue(ring, ring._unflatten(vec))


def random_monic(rng, ring, degree):
    coeffs = [random_element(rng, ring) for _ in range(degree)]
    coeffs.append(ring.one())
    return Poly(ring, coeffs)


def random_poly(rng, ring, max_degree):
    d = rng.randint(0, max_degree)
    return Poly(ring, [random_element(rng, ring) for _ in range(d + 1)])
