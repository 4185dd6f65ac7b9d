"""Shared builders for the test suite."""

from __future__ import annotations

import random

from nabext import Algebra, GaugeParam, MultilinearMap, NabCocycle
from nabext.fields import Field


def line_algebra(field: Field, square: str, name: str = "e") -> Algebra:
    """One-dimensional algebra with e*e = 0 ('zero') or e*e = e ('idem')."""
    if square == "zero":
        return Algebra.zero_product(field, [name])
    if square == "idem":
        return Algebra.from_products(field, [name], {(0, 0): {0: 1}})
    raise ValueError(square)


def trunc_poly2(field: Field) -> Algebra:
    """The 2-dimensional algebra k[t]/t^2 with basis (1, t)."""
    return Algebra.from_products(
        field,
        ["u", "t"],
        {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}},
    )


def trunc_poly3(field: Field) -> Algebra:
    """The 3-dimensional algebra k[t]/t^3 with basis (1, t, t^2)."""
    return Algebra.from_products(
        field,
        ["u", "t", "t2"],
        {
            (0, 0): {0: 1},
            (0, 1): {1: 1},
            (1, 0): {1: 1},
            (0, 2): {2: 1},
            (2, 0): {2: 1},
            (1, 1): {2: 1},
        },
    )


def zero_algebra(field: Field, dim: int, prefix: str = "a") -> Algebra:
    return Algebra.zero_product(field, [f"{prefix}{i}" for i in range(dim)])


def associative_samples(field: Field) -> list[Algebra]:
    """Associative algebras of dimensions 1 through 3."""
    return [
        line_algebra(field, "idem"),
        line_algebra(field, "zero"),
        trunc_poly2(field),
        zero_algebra(field, 2),
        trunc_poly3(field),
    ]


def rand_vector(rng: random.Random, field: Field, dim: int):
    return tuple(field.random(rng) for _ in range(dim))


def rand_map(
    rng: random.Random, field: Field, dims, target: int
) -> MultilinearMap:
    return MultilinearMap.from_function(
        field, dims, target, lambda idxs: rand_vector(rng, field, target)
    )


def rand_cochain(rng: random.Random, alg: Algebra, arity: int) -> MultilinearMap:
    return rand_map(rng, alg.field, (alg.dim,) * arity, alg.dim)


def rand_cocycle(rng: random.Random, a: Algebra, b: Algebra) -> NabCocycle:
    field = a.field
    return NabCocycle(
        a,
        b,
        rand_map(rng, field, (b.dim, a.dim), a.dim),
        rand_map(rng, field, (a.dim, b.dim), a.dim),
        rand_map(rng, field, (b.dim, b.dim), a.dim),
    )


def rand_gauge(rng: random.Random, a: Algebra, b: Algebra) -> GaugeParam:
    field = a.field
    return GaugeParam(
        tuple(tuple(field.random(rng) for _ in range(b.dim)) for _ in range(a.dim))
    )


def line_cocycle(a: Algebra, b: Algebra, f, g, x) -> NabCocycle:
    """The (1,1)-dimensional candidate triple phi=f, psi=g, chi=x."""
    field = a.field
    return NabCocycle(
        a,
        b,
        MultilinearMap.from_entries(field, (1, 1), 1, [(0, 0, 0, f)]),
        MultilinearMap.from_entries(field, (1, 1), 1, [(0, 0, 0, g)]),
        MultilinearMap.from_entries(field, (1, 1), 1, [(0, 0, 0, x)]),
    )
