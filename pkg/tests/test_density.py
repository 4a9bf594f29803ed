import random
from fractions import Fraction

import pytest

from starpart.density import (mad, mad_le, mad_le_8_3, mad_oracle, rho,
                              rho_star, rho_star_oracle, rho_star_table,
                              rho_star_weighted, rho_all_subsets)
from starpart.graphs import Graph
from starpart.generators import (gen_complete, gen_cycle, gen_g5n,
                                 gen_mad_bounded, gen_path, gen_tree_random)


def random_graph(rng, n, p):
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)
                     if rng.random() < p])


# -- rho -----------------------------------------------------------------------

def test_rho_formula_examples():
    k4 = gen_complete(4)
    assert rho(k4, range(4)) == 4 * 4 - 3 * 6 == -2
    assert rho(gen_cycle(3), range(3)) == 12 - 9 == 3
    tree = gen_tree_random(7, 1)
    for k in (1, 3, 7):
        sub = list(range(k))
        # any subset of a tree induces a forest: rho = 4k - 3(k - c) >= k + 3
        assert rho(tree, sub) >= k + 3
    assert rho(gen_path(5), range(5)) == 4 * 5 - 3 * 4 == 8


def test_rho_range_check():
    with pytest.raises(ValueError):
        rho(gen_path(3), [5])


# -- mad ------------------------------------------------------------------------

def test_mad_examples():
    assert mad(gen_complete(4)).value == 3
    for n in (2, 5, 9):
        t = gen_tree_random(n, n)
        d = mad(t)
        assert d.value == Fraction(2 * (n - 1), n)
        assert len(d.witness) == n
    assert mad(gen_g5n(1)).value == Fraction(46, 17)
    assert mad(gen_g5n(2)).value == Fraction(46, 17)
    assert mad(Graph(3, [])).value == 0


def test_mad_witness_density_matches():
    rng = random.Random(11)
    for _ in range(80):
        g = random_graph(rng, rng.randint(1, 10), rng.random())
        d = mad(g)
        vs = set(d.witness)
        m = sum(1 for u, v in g.edges() if u in vs and v in vs)
        assert d.value == Fraction(2 * m, len(vs))


def test_mad_flow_equals_oracle():
    rng = random.Random(12)
    for _ in range(300):
        g = random_graph(rng, rng.randint(1, 9), rng.random())
        assert mad(g).value == mad_oracle(g).value


# -- rho* -----------------------------------------------------------------------

def test_rho_star_forest_empty_seed():
    t = gen_tree_random(6, 2)
    res = rho_star(t, ())
    assert res.value == 0 and res.minimizer == ()


def test_rho_star_k4():
    res = rho_star(gen_complete(4), ())
    assert res.value == -2 and res.minimizer == (0, 1, 2, 3)
    assert rho_star_oracle(gen_complete(4), ()).value == -2


def test_rho_star_g5_seed():
    g5 = gen_g5n(1)
    res = rho_star(g5, (0,))
    assert res.value == rho_star_oracle(g5, (0,)).value
    assert 0 in res.minimizer
    assert rho(g5, res.minimizer) == res.value


def test_rho_star_seed_contained():
    rng = random.Random(13)
    for _ in range(100):
        g = random_graph(rng, rng.randint(1, 9), rng.random() * 0.7)
        seed = [v for v in range(g.n) if rng.random() < 0.3]
        res = rho_star(g, seed)
        assert set(seed) <= set(res.minimizer)
        assert res.value == rho_star_oracle(g, seed).value
        assert res.value == rho(g, res.minimizer)


def test_rho_star_table_matches_pointwise():
    rng = random.Random(14)
    g = random_graph(rng, 8, 0.4)
    table = rho_star_table(g)
    rhos = rho_all_subsets(g)
    assert rhos[0] == 0
    for mask in range(0, 1 << g.n, 7):
        seed = [v for v in range(g.n) if mask >> v & 1]
        assert table[mask] == rho_star(g, seed).value


# -- the 8/3 threshold ------------------------------------------------------------

def test_mad_le_8_3_examples():
    ok, wit = mad_le_8_3(gen_complete(4))
    assert not ok and wit == (0, 1, 2, 3)
    ok, wit = mad_le_8_3(gen_cycle(5))
    assert ok and wit is None
    # the tightness family sits strictly above the threshold:
    # 46/17 > 8/3 (138 > 136), as it must, having no FII-partition
    ok, wit = mad_le_8_3(gen_g5n(1))
    assert not ok
    assert rho(gen_g5n(1), wit) < 0


def test_mad_le_matches_definition():
    rng = random.Random(15)
    for _ in range(80):
        g = random_graph(rng, rng.randint(1, 9), rng.random() * 0.6)
        value = mad(g).value
        for bound in (Fraction(2), Fraction(8, 3), Fraction(3), Fraction(5, 2)):
            assert mad_le(g, bound) == (value <= bound)
        ok, _ = mad_le_8_3(g)
        assert ok == (value <= Fraction(8, 3))


def test_rho_star_weighted_consistency():
    rng = random.Random(16)
    for _ in range(40):
        g = random_graph(rng, rng.randint(1, 8), 0.5)
        seed = [v for v in range(g.n) if rng.random() < 0.25]
        assert rho_star_weighted(g, seed, 4, 3).value == rho_star(g, seed).value


# -- potential inequalities (spot checks; the acceptance suite scales up) ---------

def test_submodularity_spot():
    rng = random.Random(17)
    for _ in range(100):
        g = random_graph(rng, rng.randint(1, 9), rng.random() * 0.6)
        a = {v for v in range(g.n) if rng.random() < 0.3}
        b = {v for v in range(g.n) if rng.random() < 0.3}
        lhs = rho_star(g, a).value + rho_star(g, b).value
        rhs = rho_star(g, a | b).value + rho_star(g, a & b).value
        assert lhs >= rhs


def test_deletion_bound_spot():
    rng = random.Random(18)
    done = 0
    while done < 60:
        g = gen_mad_bounded(rng.randint(2, 10), Fraction(8, 3),
                            rng.randrange(2**30))
        s = {v for v in range(g.n) if rng.random() < 0.25}
        if not s:
            continue
        t = {u for v in s for u in g.adj[v]} - s
        incident = sum(1 for u, v in g.edges() if u in s or v in s)
        keep = [v for v in range(g.n) if v not in s]
        h, keep_list = g.induced(keep)
        idx = {old: new for new, old in enumerate(keep_list)}
        val = rho_star(h, [idx[v] for v in t]).value
        assert val >= -4 * len(s) + 3 * incident
        done += 1
