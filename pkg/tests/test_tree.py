import random

import pytest

from drinfeldforms.fq import field
from drinfeldforms.groups import group_context, is_gamma1
from drinfeldforms.mat2 import Mat2
from drinfeldforms.rings import Poly
from drinfeldforms.tree import (
    ApartmentStabilizer,
    Edge,
    QuotientGraph,
    Vertex,
    apply_edge,
    apply_vertex,
    classify_edge,
    is_adjacent,
    parabolic_fixed_end,
    reduce_edge,
    reduce_vertex,
    vertex_zero_stabilizer,
)


def rand_word(fq, rng, steps=6, maxdeg=3):
    m = Mat2.identity_poly(fq)
    for _ in range(steps):
        b = Poly(fq, [rng.randrange(fq.q) for _ in range(rng.randrange(1, maxdeg + 1))])
        m = m * (Mat2.translation(b) if rng.random() < 0.5 else Mat2.j_matrix(fq))
    return m


def test_standard_apartment_action():
    fq = field(2)
    one = Poly.one(fq)
    for i in (1, 2, 3):
        g = Mat2.diag(Poly.t_power(fq, i), one)  # diag(pi^{-i}, 1)
        assert apply_vertex(g, Vertex.standard(0), fq) == Vertex.standard(i)
    j = Mat2.j_matrix(fq)
    je0 = apply_edge(j, Edge.standard(0), fq)
    assert je0.origin == Vertex.standard(0)
    assert je0 == Edge.standard(-1).reverse()
    assert apply_edge(Mat2.diag(Poly.t(fq), one), Edge.standard(0), fq) == Edge.standard(1)


def test_adjacency_and_neighbors():
    fq = field(3)
    v = Vertex.standard(2)
    nbrs = v.neighbors(fq)
    assert len(nbrs) == 4  # q + 1
    assert all(is_adjacent(v, u) for u in nbrs)
    assert len(set(nbrs)) == 4
    child = v.child(2)
    assert child.parent() == v


@pytest.mark.parametrize("q", [2, 3])
def test_action_axiom_randomized(q):
    fq = field(q)
    rng = random.Random(q * 5)
    for _ in range(30):
        g, h = rand_word(fq, rng), rand_word(fq, rng)
        v = apply_vertex(rand_word(fq, rng), Vertex.standard(rng.randrange(4)), fq)
        assert apply_vertex(g * h, v, fq) == apply_vertex(g, apply_vertex(h, v, fq), fq)


def test_singular_matrix_rejected():
    fq = field(2)
    zero = Poly.zero(fq)
    with pytest.raises(ZeroDivisionError):
        apply_vertex(Mat2(zero, zero, zero, zero), Vertex.standard(0), fq)


def test_reduce_examples():
    fq = field(2)
    assert reduce_edge(Edge.standard(3), fq)[1:] == (3, 1)
    gamma, i, sign = reduce_edge(Edge.standard(0).reverse(), fq)
    assert (i, sign) == (0, -1)
    e2t = apply_edge(Mat2.translation(Poly.t(fq)), Edge.standard(2), fq)
    assert e2t == Edge.standard(2)  # deg t <= 2 stabilizes e_2
    assert reduce_edge(e2t, fq)[1:] == (2, 1)


@pytest.mark.parametrize("q", [2, 3])
def test_reduction_terminates_and_is_correct_on_fuzzed_edges(q):
    fq = field(q)
    rng = random.Random(q * 23)
    for _ in range(40):
        g = rand_word(fq, rng, steps=8)
        e = apply_edge(g, Edge.standard(rng.randrange(3)), fq)
        gamma, i, sign = reduce_edge(e, fq)
        assert gamma.det().is_one()
        target = Edge.standard(i) if sign == 1 else Edge.standard(i).reverse()
        assert apply_edge(gamma, e, fq) == target
        gv, j = reduce_vertex(e.origin, fq)
        assert apply_vertex(gv, e.origin, fq) == Vertex.standard(j)


def test_apartment_stabilizer_orders_and_fixing():
    fq = field(2)
    st0 = ApartmentStabilizer(fq, 0)
    assert st0.order == 2  # q(q-1)
    for m in st0.elements():
        assert apply_edge(m, Edge.standard(0), fq) == Edge.standard(0)
    st1 = ApartmentStabilizer(fq, 1)
    assert st1.order == 4
    for m in st1.elements():
        assert apply_edge(m, Edge.standard(1), fq) == Edge.standard(1)
    assert ApartmentStabilizer(field(5), 0).order == 20
    assert len(vertex_zero_stabilizer(field(3))) == 24  # |SL_2(F_3)|
    for m in vertex_zero_stabilizer(fq):
        assert apply_vertex(m, Vertex.standard(0), fq) == Vertex.standard(0)


def test_parabolic_fixed_end():
    fq = field(2)
    one, zero, t = Poly.one(fq), Poly.zero(fq), Poly.t(fq)
    assert parabolic_fixed_end(Mat2(one, t, zero, one)) == "infinity"
    low = Mat2(one, zero, t, one)
    end = parabolic_fixed_end(low)
    assert end != "infinity" and end[0].is_zero()  # fixes 0


@pytest.mark.parametrize("q,n,count", [(2, 1, 1), (2, 2, 4), (2, 3, 16), (3, 1, 1), (3, 2, 9)])
def test_stable_orbit_counts(q, n, count, cache):
    ctx = group_context(q, n)
    graph = QuotientGraph(ctx, depth=2)
    stables = [o for o in graph.edge_orbits.values() if o.stable]
    assert len(stables) == count
    # every stable orbit carries its label and they are exactly the seeds
    assert sorted(o.key for o in stables) == sorted(graph.seed_keys.values())


def test_classify_examples():
    ctx = group_context(2, 1)
    fq = ctx.fq
    graph = QuotientGraph(ctx, depth=3)
    je0 = apply_edge(Mat2.j_matrix(fq), Edge.standard(0), fq)
    cls = classify_edge(ctx, je0, graph)
    assert cls.stable and cls.sign == 1 and cls.label is not None
    assert is_gamma1(cls.witness, 1)
    # a random Gamma_1(t^n) translate stays in the same labeled orbit
    gamma = Mat2.translation(Poly.t(fq))
    cls2 = classify_edge(ctx, apply_edge(gamma, je0, fq), graph)
    assert cls2.stable and cls2.label == cls.label and cls2.sign == 1
    cls3 = classify_edge(ctx, Edge.standard(1), graph)
    assert not cls3.stable and cls3.apartment_index == 1 and cls3.cusp_end == "infinity"
    # reversal flips the sign, keeps the orbit data
    cls4 = classify_edge(ctx, Edge.standard(1).reverse(), graph)
    assert not cls4.stable and cls4.apartment_index == 1 and cls4.sign == -1
    # the zero-direction ray points at the rational end 0
    f1 = apply_edge(Mat2.j_matrix(fq), Edge.standard(1), fq)
    cls5 = classify_edge(ctx, f1, graph)
    assert not cls5.stable and cls5.cusp_end != "infinity" and cls5.cusp_end[0].is_zero()


def test_vertex_orbit_stabilizer_orders():
    ctx = group_context(2, 1)
    graph = QuotientGraph(ctx, depth=3)
    # the orbit of v_1 for Gamma_1(t): stabilizer of order q^2 containing (1, bt; 0, 1)
    key, j, w = graph.tree.reduce_vertex(Vertex.standard(1))
    vorbit = graph.vertex_orbits[key]
    assert vorbit.j == 1
    assert vorbit.stab_order == 4
    gens = vorbit.stab_gens
    assert any(
        g.a.is_one() and g.d.is_one() and g.c.is_zero() and g.b == Poly.t(ctx.fq).scale(lam)
        for g in gens
        for lam in ctx.fq.nonzero()
    )
    # brute-force oracle: elements (a, b; 0, a^{-1}) with deg b <= 1 in Gamma_1(t)
    count = 1
    for m in ApartmentStabilizer(ctx.fq, 1).elements():
        if is_gamma1(m, 1) and not (m.a.is_one() and m.b.is_zero() and m.d.is_one()):
            count += 1
    assert count == vorbit.stab_order


def test_edge_orbit_signs_never_collide():
    # an orbit never contains an edge and its reversal (parity of r)
    ctx = group_context(2, 2)
    graph = QuotientGraph(ctx, depth=3)
    for orbit in graph.edge_orbits.values():
        _, key, sign, _ = graph.classify(orbit.rep)
        _, key_r, sign_r, _ = graph.classify(orbit.rep.reverse())
        assert key == key_r and sign == 1 and sign_r == -1


def test_graph_json_and_dot_exports():
    ctx = group_context(2, 2)
    graph = QuotientGraph(ctx, depth=3)
    data = graph.to_json_dict()
    assert data["q"] == 2 and data["n"] == 2
    assert len(data["edge_orbits"]) == len(graph.edge_orbits)
    stables = [e for e in data["edge_orbits"] if e["stable"]]
    assert len(stables) == 4 and all(e["label"] is not None for e in stables)
    dot = graph.to_dot()
    assert dot.count("color=red") == 4


def test_resource_bound():
    from drinfeldforms.errors import ResourceBoundError

    ctx = group_context(2, 2)
    with pytest.raises(ResourceBoundError):
        QuotientGraph(ctx, depth=3, max_orbits=3)
