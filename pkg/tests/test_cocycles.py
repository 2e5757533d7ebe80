import random

import pytest

from drinfeldforms.cocycles import CocycleSpace, VkAction, depth_default
from drinfeldforms.errors import DimensionMismatchError
from drinfeldforms.fq import field
from drinfeldforms.groups import group_context, is_gamma1
from drinfeldforms.linalg import KRing, Matrix
from drinfeldforms.mat2 import Mat2
from drinfeldforms.rings import Poly
from drinfeldforms.tree import Edge, apply_edge


def rand_gamma(ctx, rng):
    fq = ctx.fq
    m = Mat2.identity_poly(fq)
    for _ in range(4):
        b = Poly(fq, [rng.randrange(fq.q) for _ in range(rng.randrange(1, 3))])
        if rng.random() < 0.5:
            m = m * Mat2.translation(b)
        else:
            m = m * Mat2(Poly.one(fq), Poly.zero(fq), b.shift(ctx.n), Poly.one(fq))
    assert is_gamma1(m, ctx.n)
    return m


def test_vk_action_axioms():
    fq = field(3)
    rng = random.Random(12)
    for k in (2, 3, 4):
        vk = VkAction(fq, k)
        ident = Mat2.identity_poly(fq)
        assert vk.act(ident) == Matrix.identity(vk.ring, k - 1)
        for _ in range(8):
            g = _rand_word(fq, rng)
            h = _rand_word(fq, rng)
            assert vk.act(g * h) == vk.act(g) * vk.act(h)
            if k == 2:
                assert vk.act(g) == Matrix.identity(vk.ring, 1)


def _rand_word(fq, rng):
    m = Mat2.identity_poly(fq)
    for _ in range(4):
        b = Poly(fq, [rng.randrange(fq.q) for _ in range(rng.randrange(1, 3))])
        m = m * (Mat2.translation(b) if rng.random() < 0.5 else Mat2.j_matrix(fq))
    return m


@pytest.mark.parametrize(
    "q,n,k,want",
    [(2, 1, 2, 1), (2, 2, 2, 4), (3, 1, 2, 1), (2, 1, 3, 2), (3, 1, 3, 2), (2, 2, 3, 8)],
)
def test_dimensions(q, n, k, want, cache):
    space = cache.space(q, n, k)
    assert space.dim == want


def test_depth_default_grows_with_weight():
    assert depth_default(1, 2) == 5
    assert depth_default(2, 2) == 7
    assert depth_default(1, 5) == 7


def test_too_small_depth_is_detected():
    from drinfeldforms.errors import StabilityError

    ctx = group_context(2, 2)
    with pytest.raises((DimensionMismatchError, StabilityError)):
        CocycleSpace(ctx, 2, depth=1, check_stability=False)
    with pytest.raises((DimensionMismatchError, StabilityError)):
        CocycleSpace(ctx, 3, depth=2, check_stability=False)


def test_delta_basis_property(cache):
    space = cache.space(2, 2, 2)
    ring = space.ring
    labels = space.labels()
    for j, (c, d) in enumerate(labels):
        rep = space.stable_rep_edge(c, d)
        for i, cocycle in enumerate(space.basis):
            val = space.evaluate(cocycle, rep)[0]
            assert val == (ring.one if i == j else ring.zero)
            # antisymmetry at the stable representative
            assert space.evaluate(cocycle, rep.reverse())[0] == -val


def test_weight2_evaluate_vanishes_up_the_apartment(cache):
    # the source set of e_1 is one orbit of q edges with equal values: q = 0
    space = cache.space(2, 1, 2)
    c = space.basis[0]
    assert space.evaluate(c, Edge.standard(1))[0].is_zero()
    assert space.evaluate(c, Edge.standard(2))[0].is_zero()


def test_weight2_invariance_under_group(cache):
    space = cache.space(2, 1, 2)
    ctx = space.ctx
    rng = random.Random(3)
    c = space.basis[0]
    base = space.stable_rep_edge(*space.labels()[0])
    for _ in range(10):
        gamma = rand_gamma(ctx, rng)
        assert space.evaluate(c, apply_edge(gamma, base, ctx.fq)) == space.evaluate(c, base)


@pytest.mark.parametrize("q,n,k", [(2, 2, 2), (3, 1, 3), (2, 1, 4)])
def test_equivariance_randomized(q, n, k, cache):
    space = cache.space(q, n, k)
    ctx = space.ctx
    rng = random.Random(q * n * k)
    kring = KRing(ctx.fq)
    reps = [
        space.graph.edge_orbits[key].rep
        for key in space.orbit_keys
        if space.graph.edge_orbits[key].depth <= space.depth - 3
    ]
    for _ in range(25):
        gamma = rand_gamma(ctx, rng)
        e = reps[rng.randrange(len(reps))]
        cocycle = space.basis[rng.randrange(space.dim)]
        lhs = space.evaluate(cocycle, apply_edge(gamma, e, ctx.fq))
        rhs = space.evaluate(cocycle, e)
        if k > 2:
            rhs = tuple(space.vk.act(gamma).apply([kring.embed(x) for x in rhs]))
            lhs = tuple(kring.embed(x) for x in lhs)
        else:
            lhs = tuple(lhs)
            rhs = tuple(rhs)
        assert lhs == rhs


@pytest.mark.parametrize("q,n,k", [(2, 1, 2), (2, 2, 2), (2, 1, 3)])
def test_harmonicity_residual_zero_everywhere(q, n, k, cache):
    space = cache.space(q, n, k)
    for cocycle in space.basis:
        for vorbit in space.graph.interior_vertex_orbits():
            assert not any(space.harmonicity_residual(cocycle, vorbit.rep))


@pytest.mark.parametrize("q,n,k", [(2, 1, 2), (2, 2, 2), (3, 1, 3)])
def test_source_sum_recursion(q, n, k, cache):
    space = cache.space(q, n, k)
    graph = space.graph
    interior = {vo.rep for vo in graph.interior_vertex_orbits()}
    checked = 0
    for key in space.orbit_keys:
        orbit = graph.edge_orbits[key]
        if orbit.depth > 3:
            continue
        for e in (orbit.rep, orbit.rep.reverse()):
            if e.origin not in interior:
                continue
            for cocycle in space.basis:
                assert space.predecessor_sum(cocycle, e) == space.evaluate(cocycle, e)
            checked += 1
    assert checked > 0


def test_antisymmetry_everywhere(cache):
    space = cache.space(2, 2, 3)
    for cocycle in space.basis:
        for key in space.orbit_keys:
            rep = space.graph.edge_orbits[key].rep
            plus = space.evaluate(cocycle, rep)
            minus = space.evaluate(cocycle, rep.reverse())
            assert all(not (a + b) for a, b in zip(plus, minus))


def test_stabilizer_fixed_space(cache):
    # stored values lie in the fixed space of the representative stabilizer
    space = cache.space(2, 1, 3)
    graph = space.graph
    kring = KRing(space.ctx.fq)
    for key in space.orbit_keys:
        orbit = graph.edge_orbits[key]
        if orbit.stab_order == 1:
            continue
        for delta in graph.tree.edge_stab_generators(orbit):
            act = space.vk.act(delta)
            for cocycle in space.basis:
                stored = cocycle.get(key)
                if stored is None:
                    continue
                vec = [kring.embed(x) for x in stored]
                assert act.apply(vec) == vec


def test_basis_json_export(cache):
    import json

    space = cache.space(2, 2, 2)
    data = space.basis_json()
    assert len(data) == 4
    json.dumps(data)  # serializable
    # the delta basis: each cocycle takes value 1 at its own stable orbit
    ring = space.ring
    ones = sum(
        1
        for entry in data
        for rec in entry
        if rec["value"] == [{"num": [1], "den": [1]}]
    )
    assert ones >= 4
