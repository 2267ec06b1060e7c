import pytest
from sympy.polys.domains import QQ

from wronski.algebra.exactpoly import Poly, PolyTuple
from wronski.errors import IrrationalSingularityError, NotRegularPointError, UsageError
from wronski.group.cells import act, elementary, random_unimatrix, standard_column
from wronski.group.words import Word, reduced_words_of_longest, transition_map
from wronski.population.generalv import (SingularData, Subspace, bethe_cell_membership, exponents_at,
                                         fat_cell_membership, fertility_check, fiber_check, generation_curve,
                                         genericity_check, normalized_mutation_v, plucker_relation,
                                         reduced_wronski_inverse_at, reduced_wronski_map, reduced_wronski_map_at,
                                         scale_basis, scale_tuple, singular_data, twist_constant,
                                         unipotent_basis, unipotent_basis_check, volume, wronskian_chart)
from wronski.population.mutations import evolve, wronski_map
from wronski.utils.misc import random_params, random_rational

x = Poly.x()


@pytest.fixture
def gapped():
    """span(1, x^2, x^3): one singular point at 0 with weight (1, 0)."""
    return Subspace([Poly.one(), x ** 2, x ** 3])


def test_subspace_validation():
    with pytest.raises(UsageError):
        Subspace([Poly.one(), 2 * Poly.one()])
    with pytest.raises(UsageError):
        Subspace([x, x ** 2])
    V = Subspace.polynomials(2)
    assert V.rank == 2
    assert V.contains(1 + x ** 2)
    assert not V.contains(x ** 3)
    assert V == Subspace([1 + x, x, x ** 2])


def test_exponents(gapped):
    assert exponents_at(Subspace.polynomials(2), 5) == ((0, 1, 2), (0, 0))
    assert exponents_at(gapped, 0) == ((0, 2, 3), (1, 0))
    assert exponents_at(gapped, 1) == ((0, 1, 2), (0, 0))


def test_exponents_follow_translation(gapped):
    shifted = Subspace([p.shift(3) for p in gapped.basis])
    assert exponents_at(shifted, -3) == exponents_at(gapped, 0)


def test_singular_data(gapped):
    data = singular_data(gapped)
    assert data.points == (0,)
    assert data.weights == ((1, 0),)
    assert data.twists == (x, Poly.one())
    assert data.denominator(3) == x ** 2
    assert data == SingularData.from_points(2, [0], [(1, 0)])
    trivial = singular_data(Subspace.polynomials(3))
    assert trivial.points == ()
    assert trivial.twists == (Poly.one(),) * 3


def test_singular_data_validation():
    with pytest.raises(UsageError):
        SingularData(2, [0, 0], [(1, 0), (0, 1)])
    with pytest.raises(UsageError):
        SingularData(2, [0], [(1,)])
    with pytest.raises(NotRegularPointError):
        SingularData(2, [0], [(1, 0)]).normalizer(2, 0)


def test_irrational_singular_points():
    with pytest.raises(IrrationalSingularityError):
        singular_data(Subspace([Poly.one(), x ** 3 + 3 * x]))


def test_reduced_wronski_map(gapped):
    assert reduced_wronski_map(gapped, gapped.basis) == PolyTuple([Poly.one(), Poly.constant(2)])
    assert volume(gapped, gapped.basis) == 6


@pytest.mark.parametrize('rank', [2, 3])
def test_reduced_map_of_polynomials_is_the_wronski_map(rng, rank):
    V = Subspace.polynomials(rank)
    b = act(random_unimatrix(rank, rng), standard_column(rank))
    assert reduced_wronski_map(V, b.entries) == wronski_map(b)
    assert volume(V, b.entries) == 1


def test_unipotent_basis(gapped):
    b = unipotent_basis(gapped, 1)
    assert b.entries == (
        Poly.one(),
        Poly([QQ(-2, 3), 0, 1, QQ(-1, 3)]),
        Poly([QQ(1, 6), 0, QQ(-1, 2), QQ(1, 3)]),
    )
    assert unipotent_basis_check(gapped, b, 1)
    assert not unipotent_basis_check(gapped, [2 * p for p in b], 1)
    with pytest.raises(NotRegularPointError):
        unipotent_basis(gapped, 0)


def test_unipotent_group_preserves_unipotent_bases(gapped, rng):
    b = act(random_unimatrix(2, rng), unipotent_basis(gapped, 1))
    assert unipotent_basis_check(gapped, b, 1)


def test_reduced_map_at_regular_point(gapped):
    b = unipotent_basis(gapped, 1)
    y = reduced_wronski_map_at(gapped, b, 1)
    assert y == PolyTuple([Poly.one(), 2 - x])
    assert all(e(1) == 1 for e in y)
    assert volume(gapped, b.entries) == 1


@pytest.mark.parametrize('z', [1, -2, QQ(1, 2)])
def test_twisted_comparison(gapped, rng, z):
    data = singular_data(gapped)
    for _ in range(2):
        b = act(random_unimatrix(2, rng), unipotent_basis(gapped, z))
        y = reduced_wronski_map_at(gapped, b, z, data)
        for i in (1, 2):
            c = random_rational(rng, signed=True)
            moved = act(elementary(i, c, 2), b)
            assert reduced_wronski_map_at(gapped, moved, z, data) == normalized_mutation_v(gapped, y, i, c, z, data)


def test_comparison_for_polynomials(rng):
    V = Subspace.polynomials(3)
    b = act(random_unimatrix(3, rng), unipotent_basis(V, 2))
    y = reduced_wronski_map_at(V, b, 2)
    for i in (1, 2, 3):
        moved = act(elementary(i, 5, 3), b)
        assert reduced_wronski_map_at(V, moved, 2) == normalized_mutation_v(V, y, i, 5, 2)


def test_wronskian_chart_at_origin_is_evolution(rng):
    V = Subspace.polynomials(2)
    for word in reduced_words_of_longest(2):
        params = random_params(rng, 3, signed=True)
        assert wronskian_chart(V, 0, PolyTuple.ones(2), word, params) == evolve(word, params)


def test_wronskian_charts_of_general_subspace(gapped, rng):
    z = 1
    data = singular_data(gapped)
    y0 = reduced_wronski_map_at(gapped, unipotent_basis(gapped, z), z, data)
    h, h2 = Word.parse('121', 2), Word.parse('212', 2)
    params = random_params(rng, 3)
    y = wronskian_chart(gapped, z, y0, h, params, data)
    assert y == wronskian_chart(gapped, z, y0, h2, transition_map(h, h2, params), data)
    assert bethe_cell_membership(gapped, y, z, data)


def test_reduced_inverse(gapped, rng):
    b = act(random_unimatrix(2, rng), unipotent_basis(gapped, 1))
    y = reduced_wronski_map_at(gapped, b, 1)
    assert reduced_wronski_inverse_at(gapped, y, 1) == b
    with pytest.raises(UsageError):
        reduced_wronski_inverse_at(gapped, PolyTuple.ones(3), 1)


def test_twist_constant(gapped, rng):
    b0 = standard_column(2)
    V = Subspace.polynomials(2)
    assert twist_constant(V, b0.entries, 1) == 1
    assert twist_constant(V, b0.entries, 2) == 1
    assert twist_constant(gapped, gapped.basis, 1) == 1
    assert twist_constant(gapped, gapped.basis, 2) == 1
    b = act(random_unimatrix(2, rng), unipotent_basis(gapped, 1))
    assert twist_constant(gapped, b.entries, 1) != 0


def test_volume_invariance(gapped, rng):
    b = act(random_unimatrix(2, rng), unipotent_basis(gapped, 1))
    base = volume(gapped, b.entries)
    assert volume(gapped, act(random_unimatrix(2, rng), b).entries) == base
    assert volume(gapped, scale_basis(b, (2, QQ(-1, 3))).entries) == base
    with pytest.raises(UsageError):
        scale_basis(b, (1, 0))


def test_scaling_and_fibers(rng):
    V = Subspace.polynomials(2)
    y = evolve(Word.parse('121', 2), random_params(rng, 3))
    scaled = scale_tuple(y, (3, QQ(-1, 2)))
    assert not bethe_cell_membership(V, scaled, 0)
    assert fat_cell_membership(V, scaled, 0)
    assert fiber_check(V, y, 0, [(3, QQ(-1, 2)), (QQ(2, 7), 5)])
    assert plucker_relation(scaled)
    assert not plucker_relation(PolyTuple([Poly([1, 2, QQ(3, 2)]), Poly([1, 5, 4])]))


def test_fat_cell_rejects_vanishing_entries():
    V = Subspace.polynomials(2)
    assert not fat_cell_membership(V, PolyTuple([x, Poly.one()]), 0)
    with pytest.raises(UsageError):
        plucker_relation(PolyTuple.ones(3))


def test_bethe_cell_membership():
    V = Subspace.polynomials(2)
    assert bethe_cell_membership(V, PolyTuple([Poly([1, 2, QQ(3, 2)]), Poly([1, 5, QQ(7, 2)])]), 0)
    assert not bethe_cell_membership(V, PolyTuple([Poly([1, 2, QQ(3, 2)]), Poly([1, 5, 4])]), 0)


def test_fertility_and_genericity(rng):
    y = evolve(Word.parse('121', 2), (1, 3, 2))
    assert fertility_check(y)
    assert genericity_check(y)
    assert not genericity_check(PolyTuple([1 + x, 1 + x]))
    assert not genericity_check(PolyTuple([(1 + x) ** 2, Poly.one()]))
    assert not fertility_check(PolyTuple([1 + x + x ** 2, Poly.one()]))
    assert fertility_check(PolyTuple.ones(2), [x, Poly.one()])


def test_generation_curve():
    family = generation_curve(PolyTuple.ones(2), 1)
    assert family.at(3) == PolyTuple([1 + 3 * x, Poly.one()])
    assert family.at(0) == PolyTuple.ones(2)
    with pytest.raises(UsageError):
        generation_curve(PolyTuple.ones(2), 3)


@pytest.mark.parametrize('exponents, twists', [
    ((0, 2, 3), (x, Poly.one())),
    ((0, 3, 4), (x ** 2, Poly.one())),
    ((0, 3, 5), (x ** 2, x)),
])
def test_monomial_subspaces(rng, exponents, twists):
    V = Subspace([Poly.monomial(k) for k in exponents])
    data = singular_data(V)
    assert data.twists == twists
    b = act(random_unimatrix(2, rng), unipotent_basis(V, 2))
    y = reduced_wronski_map_at(V, b, 2, data)
    assert all(e(2) == 1 for e in y)
    for i in (1, 2):
        moved = act(elementary(i, QQ(-3, 7), 2), b)
        assert reduced_wronski_map_at(V, moved, 2, data) == normalized_mutation_v(V, y, i, QQ(-3, 7), 2, data)
        assert twist_constant(V, b.entries, i, data) != 0
