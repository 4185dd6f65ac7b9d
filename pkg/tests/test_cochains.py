import random

import pytest

from helpers import (
    associative_samples,
    line_algebra,
    rand_cochain,
    rand_map,
    trunc_poly2,
    trunc_poly3,
)
from nabext import (
    Algebra,
    MultilinearMap,
    circ,
    circ_i,
    delta_as_bracket,
    gerstenhaber_bracket,
    hochschild_delta,
    identity_map,
    multiplication_map,
)
from nabext.fields import GF2, GF3, QQ


def test_map_shape_and_entry_round_trip():
    m = MultilinearMap.from_entries(QQ, (2, 3), 2, [(1, 0, 2, "3/2"), (0, 1, 1, 2)])
    assert m.arity == 2 and m.degree == 1
    assert m.entry(1, (0, 2)) == QQ.parse("3/2")
    assert sorted(m.entries()) == sorted(
        MultilinearMap.from_entries(QQ, (2, 3), 2, list(m.entries())).entries()
    )


def test_map_apply_is_multilinear_evaluation():
    alg = trunc_poly2(QQ)
    m = multiplication_map(alg)
    x = (QQ.parse("2"), QQ.parse("1/2"))
    y = (QQ.parse("-1"), QQ.parse("3"))
    assert m.apply([x, y]) == alg.multiply(x, y)


def test_delta_of_zero_map_is_zero():
    alg = trunc_poly2(GF3)
    for arity in (0, 1, 2):
        z = MultilinearMap.zero(GF3, (alg.dim,) * arity, alg.dim)
        assert hochschild_delta(z, alg).is_zero()


def test_delta_of_identity_on_idempotent_line():
    # delta(id)(e, e) = e*id(e) - id(e*e) + id(e)*e = e - e + e = e
    alg = line_algebra(QQ, "idem")
    d = hochschild_delta(identity_map(QQ, 1), alg)
    assert d.column((0, 0)) == (QQ.one,)


def test_delta_squared_is_zero_on_random_cochains():
    rng = random.Random(3)
    for field in (QQ, GF2):
        for alg in associative_samples(field):
            for arity in (1, 2):
                for _ in range(5):
                    f = rand_cochain(rng, alg, arity)
                    assert hochschild_delta(hochschild_delta(f, alg), alg).is_zero()


def test_delta_requires_matching_space():
    alg = trunc_poly2(QQ)
    f = rand_map(random.Random(0), QQ, (3, 3), 3)
    with pytest.raises(ValueError):
        hochschild_delta(f, alg)


def test_circ_i_definition_unrolled():
    rng = random.Random(4)
    f = rand_map(rng, QQ, (2, 2), 2)
    g = rand_map(rng, QQ, (2, 2), 2)
    h1 = circ_i(f, g, 1)
    h2 = circ_i(f, g, 2)
    for idxs in [(0, 0, 0), (1, 0, 1), (0, 1, 1)]:
        x, y, z = idxs
        bx = tuple(QQ.one if t == x else QQ.zero for t in range(2))
        by = tuple(QQ.one if t == y else QQ.zero for t in range(2))
        bz = tuple(QQ.one if t == z else QQ.zero for t in range(2))
        assert h1.column(idxs) == f.apply([g.apply([bx, by]), bz])
        assert h2.column(idxs) == f.apply([bx, g.apply([by, bz])])


def test_circ_i_identity_is_neutral():
    rng = random.Random(5)
    ident = identity_map(QQ, 2)
    g = rand_map(rng, QQ, (2, 2, 2), 2)
    assert circ_i(ident, g, 1) == g
    for i in (1, 2, 3):
        assert circ_i(g, ident, i) == g


def test_circ_i_product_on_idempotent_line():
    alg = line_algebra(QQ, "idem")
    m = multiplication_map(alg)
    assert circ_i(m, m, 2).column((0, 0, 0)) == (QQ.one,)


def test_circ_i_validation():
    f = rand_map(random.Random(0), QQ, (2, 2), 2)
    g = rand_map(random.Random(0), QQ, (3, 3), 3)
    with pytest.raises(ValueError):
        circ_i(f, f, 3)
    with pytest.raises(ValueError):
        circ_i(f, g, 1)


def test_circ_signs_degree_zero_inner():
    # inner map of degree 0: all insertion signs are +1
    rng = random.Random(6)
    f = rand_map(rng, QQ, (2, 2, 2), 2)
    g = rand_map(rng, QQ, (2,), 2)
    assert circ(f, g) == circ_i(f, g, 1) + circ_i(f, g, 2) + circ_i(f, g, 3)


def test_circ_signs_two_arity_two_maps():
    # deg f = deg g = 1: signs are (-1)^{1*2} = +1 and (-1)^{1*3} = -1
    rng = random.Random(7)
    f = rand_map(rng, QQ, (2, 2), 2)
    g = rand_map(rng, QQ, (2, 2), 2)
    assert circ(f, g) == circ_i(f, g, 1) - circ_i(f, g, 2)


def test_self_composition_of_associative_product_vanishes():
    alg = line_algebra(QQ, "idem")
    m = multiplication_map(alg)
    assert circ(m, m).is_zero()


def test_self_composition_detects_non_associativity_any_characteristic():
    bad = Algebra.from_products(GF2, ["e0", "e1"], {(0, 0): {1: 1}, (1, 0): {0: 1}})
    m = multiplication_map(bad)
    mm = circ(m, m)
    assert not mm.is_zero()
    # the self-composition is the associator map itself
    assert mm.column((0, 0, 0)) == bad.associator(
        bad.basis_vector(0), bad.basis_vector(0), bad.basis_vector(0)
    )


def test_bracket_with_self_doubles_composition_in_odd_degree():
    rng = random.Random(8)
    f = rand_map(rng, QQ, (3, 3), 3)
    assert gerstenhaber_bracket(f, f) == circ(f, f).scale(QQ.from_int(2))


def test_bracket_of_product_with_itself_detects_associativity():
    # over a field where 2 is invertible, [m, m] = 0 iff the product is
    # associative; over F2 the bracket is identically 0, so the detector is
    # the self-composition (tested above)
    for alg, expected in [
        (trunc_poly2(QQ), True),
        (Algebra.from_products(QQ, ["e0", "e1"], {(0, 0): {1: 1}, (1, 0): {0: 1}}), False),
        (trunc_poly2(GF3), True),
        (Algebra.from_products(GF3, ["e0", "e1"], {(0, 0): {1: 1}, (1, 0): {0: 1}}), False),
    ]:
        m = multiplication_map(alg)
        assert gerstenhaber_bracket(m, m).is_zero() is expected
        assert alg.is_associative() is expected


def test_graded_antisymmetry_random_pairs():
    rng = random.Random(9)
    pairs = 0
    for field in (QQ, GF2):
        for dim in (2, 3):
            for af, ag in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)]:
                f = rand_map(rng, field, (dim,) * af, dim)
                g = rand_map(rng, field, (dim,) * ag, dim)
                sign = field.from_int((-1) ** (f.degree * g.degree))
                lhs = gerstenhaber_bracket(f, g)
                rhs = gerstenhaber_bracket(g, f).scale(sign)
                assert (lhs + rhs).is_zero()
                pairs += 1
    assert pairs >= 20


def test_delta_as_bracket_matches_hochschild_delta():
    # the sign-convention gate: delta f = (-1)^(arity-1) [m, f] exactly
    rng = random.Random(10)
    for field in (QQ, GF2, GF3):
        for alg in associative_samples(field):
            m = multiplication_map(alg)
            for arity in (1, 2, 3):
                f = rand_cochain(rng, alg, arity)
                assert delta_as_bracket(f, m) == hochschild_delta(f, alg)


def test_delta_as_bracket_arity_two_is_minus_bracket():
    rng = random.Random(11)
    alg = trunc_poly2(QQ)
    m = multiplication_map(alg)
    f = rand_cochain(rng, alg, 2)
    assert delta_as_bracket(f, m) == -gerstenhaber_bracket(m, f)


def test_delta_as_bracket_zero():
    alg = trunc_poly2(QQ)
    m = multiplication_map(alg)
    z = MultilinearMap.zero(QQ, (2, 2), 2)
    assert delta_as_bracket(z, m).is_zero()


def test_graded_jacobi_identity_random():
    rng = random.Random(12)
    for field in (QQ, GF3):
        for _ in range(6):
            dim = rng.choice((1, 2))
            arities = [rng.choice((1, 2)) for _ in range(3)]
            f, g, h = (rand_map(rng, field, (dim,) * a, dim) for a in arities)
            mf, ng, kh = f.degree, g.degree, h.degree
            t1 = gerstenhaber_bracket(f, gerstenhaber_bracket(g, h)).scale(
                field.from_int((-1) ** (mf * kh))
            )
            t2 = gerstenhaber_bracket(g, gerstenhaber_bracket(h, f)).scale(
                field.from_int((-1) ** (ng * mf))
            )
            t3 = gerstenhaber_bracket(h, gerstenhaber_bracket(f, g)).scale(
                field.from_int((-1) ** (kh * ng))
            )
            assert (t1 + t2 + t3).is_zero()


def test_delta_is_a_graded_derivation_of_the_bracket():
    """Derivation rule, in the two equivalent signed forms.

    The differential in bracket form, d = [m, -], satisfies the textbook
    axiom d[f,g] = [df,g] + (-1)^{deg f}[f,dg] verbatim.  The Hochschild
    differential differs from d by the factor (-1)^{arity-1}, which shifts
    the rule to delta[f,g] = (-1)^{deg g}[delta f, g] + [f, delta g]; both
    are exact tensor identities here.
    """
    rng = random.Random(13)
    for field in (QQ, GF2):
        for alg in associative_samples(field)[:3]:
            m = multiplication_map(alg)
            for af, ag in [(1, 1), (1, 2), (2, 2), (2, 3)]:
                f = rand_cochain(rng, alg, af)
                g = rand_cochain(rng, alg, ag)
                br = gerstenhaber_bracket(f, g)

                ad = lambda x: gerstenhaber_bracket(m, x)
                lhs = ad(br)
                rhs = gerstenhaber_bracket(ad(f), g) + gerstenhaber_bracket(
                    f, ad(g)
                ).scale(field.from_int((-1) ** f.degree))
                assert lhs == rhs

                lhs = hochschild_delta(br, alg)
                rhs = gerstenhaber_bracket(hochschild_delta(f, alg), g).scale(
                    field.from_int((-1) ** g.degree)
                ) + gerstenhaber_bracket(f, hochschild_delta(g, alg))
                assert lhs == rhs


def test_arity_zero_constants():
    # delta of a constant c is x -> x*c - c*x; brackets with constants
    # follow the same insertion formulas with empty sums
    alg = trunc_poly2(QQ)
    const = MultilinearMap.from_entries(QQ, (), 2, [(1, QQ.one)])  # the element t
    d = hochschild_delta(const, alg)
    assert d.arity == 1
    # t is central in k[t]/t^2, so delta vanishes
    assert d.is_zero()
    m = multiplication_map(alg)
    # the arity-0 empty insertion sum makes circ(const, m) the zero 1-ary map
    assert circ(const, m).arity == 1 and circ(const, m).is_zero()
    # and delta c = (-1)^{0-1}[m, c] still holds at arity 0
    assert delta_as_bracket(const, m) == d
