import pytest
from hypothesis import given, settings, strategies as st

from conftest import entropy_vectors, surjections
from entcone.coarse import (
    CoarseMap,
    build_delta,
    enumerate_partitions,
    enumerate_surjections,
    parse_map,
    pullback,
    purifier_collapse,
    tensor_pad,
)
from entcone.cone import (
    HRepCone,
    VRepCone,
    double_description,
    equal,
    hull_contains,
    is_extreme_ray,
    orbit_expand,
    ray_of,
)
from entcone.entrospace import EntropyVector
from entcone.errors import DimensionMismatch, InvalidArity, LengthMismatch, NotSurjective, PartyOutOfRange
from entcone.hypergraph import entropy_vector, fixture
from entcone.ineq import family_instances, sa_instances, saturated_set
from entcone.states import all_bells, ame4, bell, ghz

GHZ3 = ghz(range(4), 3)


def test_parse_map_examples():
    f = parse_map("0,1,1,2,2,3,3", 6, 3)
    assert f.images == (0, 1, 1, 2, 2, 3, 3) and (f.n_from, f.n_to) == (6, 3)
    assert parse_map("0,1,2", 2, 2) == CoarseMap.identity(2)
    with pytest.raises(NotSurjective):
        parse_map("0,1,1", 2, 2)
    with pytest.raises(LengthMismatch):
        parse_map("0,1", 2, 2)
    with pytest.raises(PartyOutOfRange):
        parse_map("0,1,5", 2, 2)
    with pytest.raises(InvalidArity):
        parse_map("0,1,2", 1, 2)
    with pytest.raises(LengthMismatch):
        parse_map("0,a,1")


def test_pullback_examples():
    v = ame4()
    assert pullback(CoarseMap.identity(3), v) == v
    fig1 = entropy_vector(fixture("fig1"))
    assert pullback(parse_map("0,1,1,2,2,3,3"), fig1) == GHZ3 * 2
    img = pullback(parse_map("0,1,1,2,2,3,4"), fig1)
    assert is_extreme_ray(img, HRepCone.of(family_instances("lambda4", 4))).extreme
    with pytest.raises(DimensionMismatch):
        pullback(CoarseMap.identity(2), v)


def test_enumerate_surjections_counts():
    maps = list(enumerate_surjections(1, 1))
    assert [m.images for m in maps] == [(0, 1), (1, 0)]
    assert len(list(enumerate_surjections(2, 1))) == 6
    assert len(list(enumerate_surjections(3, 2))) == 3**4 - 3 * 2**4 + 3 == 36
    # partitions of a 4-set into 3 blocks
    assert len(list(enumerate_partitions(3, 2))) == 6
    with pytest.raises(InvalidArity):
        list(enumerate_surjections(1, 2))


def test_build_delta_examples():
    bells2 = VRepCone.of_vectors(all_bells(2))
    assert equal(build_delta(bells2, 2), bells2)
    d33 = build_delta(VRepCone.of_vectors(all_bells(3) + [ame4()]), 3)
    assert d33.rays == VRepCone.of_vectors(all_bells(3) + [ame4()]).rays
    fig1 = VRepCone.of_vectors([entropy_vector(fixture("fig1"))])
    assert ray_of(GHZ3) in build_delta(fig1, 3, reduced=True).rays


@pytest.mark.parametrize("src", ["bells3", "ame"])
def test_reduced_mode_matches_exhaustive(src):
    V = VRepCone.of_vectors(all_bells(3) if src == "bells3" else [ame4()])
    for n_to in (1, 2, 3):
        full = build_delta(V, n_to)
        red = build_delta(V, n_to, reduced=True)
        assert orbit_expand(full).rays == red.rays
        assert equal(full, red)


def test_prune_keeps_hull():
    V = VRepCone.of_vectors(all_bells(3) + [ame4(), GHZ3])
    full = build_delta(V, 2)
    pruned = build_delta(V, 2, prune=True)
    assert equal(full, pruned)
    assert pruned.rays == double_description(HRepCone.of(sa_instances(2))).rays


def test_tensor_pad_examples():
    assert tensor_pad(bell(1, 2, 2), 3) == bell(1, 2, 3)
    assert tensor_pad(bell(1, 2, 2), 3).comp == (1, 1, 0, 0, 1, 1, 0)
    assert tensor_pad(EntropyVector.zeros(2), 4).is_zero()
    with pytest.raises(InvalidArity):
        tensor_pad(bell(1, 2, 2), 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(entropy_vectors(n), st.integers(n + 1, 6))))
def test_pad_then_collapse_recovers(case):
    v, n_to = case
    assert pullback(purifier_collapse(n_to, v.n), tensor_pad(v, n_to)) == v


@settings(max_examples=60, deadline=None)
@given(
    st.integers(1, 6).flatmap(
        lambda a: st.integers(1, a).flatmap(
            lambda b: st.integers(1, b).flatmap(
                lambda c: st.tuples(entropy_vectors(a), surjections(a, b), surjections(b, c))
            )
        )
    )
)
def test_functoriality(case):
    v, f, g = case
    assert pullback(g, pullback(f, v)) == pullback(f.then(g), v)


@pytest.mark.parametrize("name,n_to", [("fig1", 3), ("fig1", 4), ("fig3", 4), ("fig3", 5)])
def test_pullback_preserves_poly(name, n_to):
    v = entropy_vector(fixture(name))
    P = family_instances("poly", n_to)
    for f in list(enumerate_partitions(v.n, n_to))[:200]:
        assert saturated_set(pullback(f, v), P)[1] == []


@pytest.mark.parametrize("n", [2, 3])
def test_delta_monotone_under_padding(n):
    base = all_bells(n) + ([ame4()] if n == 3 else [])
    padded = [tensor_pad(v, n + 1) for v in base]
    sac = HRepCone.of(sa_instances(n + 1))
    assert all(is_extreme_ray(v, sac).extreme for v in padded)
    small = build_delta(VRepCone.of_vectors(base), n)
    big = build_delta(VRepCone.of_vectors(padded), n)
    assert hull_contains(small, big)[0]


def test_composition_checks_domains():
    with pytest.raises(DimensionMismatch):
        CoarseMap.identity(3).then(CoarseMap.identity(2))
