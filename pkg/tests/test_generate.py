import math
import random

import pytest

from hyperbench import (
    GenSpec,
    classify_scale,
    demo_pool,
    derive_seed,
    edge_count_bounds,
    gen_3cl_instance,
    gen_hhm_instance,
    gen_ism_pair,
    gen_random_connected,
    gen_shc_instance,
    load_pool,
    solve_ism,
    subsample_real,
    verify_3cl,
    verify_hhm,
    verify_shc,
)
from hyperbench.generate import (
    MAX_ORDER,
    SCALE_RANGES,
    SourcePool,
    reindex_canonical,
    relabel,
)


def test_derive_seed_stable():
    a = derive_seed(7, "x", 1)
    assert a == derive_seed(7, "x", 1)
    assert a != derive_seed(7, "x", 2)
    assert a != derive_seed(8, "x", 1)
    assert derive_seed(7, "x:1") != derive_seed(7, "x", 1)  # labels are delimited
    assert 0 <= a < 2**64


def test_classify_scale_boundaries():
    assert classify_scale(5) == "small"
    assert classify_scale(10) == "small"
    assert classify_scale(11) == "medium"
    assert classify_scale(15) == "medium"
    assert classify_scale(16) == "large"
    assert classify_scale(20) == "large"
    with pytest.raises(ValueError):
        classify_scale(4)
    with pytest.raises(ValueError):
        classify_scale(21)


def test_edge_count_bounds():
    assert edge_count_bounds(5) == (1, 7)
    assert edge_count_bounds(10) == (2, 15)
    assert edge_count_bounds(20) == (4, 30)


def test_genspec_validation():
    with pytest.raises(ValueError):
        GenSpec(scale="huge")
    with pytest.raises(ValueError):
        GenSpec(source="scraped")


def _in_band(h) -> bool:
    lo, hi = edge_count_bounds(h.n)
    return lo <= len(h.edges) <= hi


@pytest.mark.parametrize("scale", ["small", "medium", "large"])
def test_gen_random_connected(scale):
    lo, hi = SCALE_RANGES[scale]
    for i in range(25):
        h = gen_random_connected(GenSpec("generic", scale, "synthetic", derive_seed(3, scale, i)))
        assert lo <= h.n <= hi
        assert h.is_connected()
        assert _in_band(h)
        assert max(h.order_sequence()) <= min(MAX_ORDER, h.n)


def test_gen_deterministic():
    spec = GenSpec("generic", "medium", "synthetic", 1234)
    assert gen_random_connected(spec) == gen_random_connected(spec)


def test_gen_3cl_certificates():
    for i in range(20):
        inst = gen_3cl_instance(GenSpec("3-CL", "small", "synthetic", derive_seed(5, i)))
        assert verify_3cl(inst.hypergraph, inst.coloring)
        assert inst.hypergraph.is_connected()
        assert _in_band(inst.hypergraph)


def test_gen_shc_certificates():
    for i in range(20):
        inst = gen_shc_instance(GenSpec("SHC", "medium", "synthetic", derive_seed(6, i)))
        assert verify_shc(inst.hypergraph, inst.cycle)
        assert inst.hypergraph.is_connected()
        assert _in_band(inst.hypergraph)


def test_gen_hhm_certificates():
    for i in range(20):
        inst = gen_hhm_instance(GenSpec("HHM", "small", "synthetic", derive_seed(7, i)))
        assert verify_hhm(inst.hypergraph, inst.path, inst.start, inst.end)
        assert inst.hypergraph.is_connected()
        assert _in_band(inst.hypergraph)


def test_gen_ism_labels():
    seen = set()
    for i in range(30):
        pair = gen_ism_pair(GenSpec("ISM", "small", "synthetic", derive_seed(8, i)))
        seen.add(pair.isomorphic)
        assert pair.a.n == pair.b.n
        assert pair.isomorphic == solve_ism(pair.a, pair.b)
    assert seen == {True, False}  # both labels occur


def test_relabel_preserves_structure(hstar):
    rng = random.Random(2)
    perm = [4, 3, 2, 1, 0]
    out = relabel(hstar, perm, rng)
    assert out.n == hstar.n
    assert sorted(out.degree_sequence()) == sorted(hstar.degree_sequence())
    assert solve_ism(hstar, out)


def test_reindex_canonical():
    from hyperbench import Hypergraph

    h = Hypergraph(3, [(2, 1), (0, 2)])
    out = reindex_canonical(h, [2, 0, 1])  # old 2 becomes 0, old 0 becomes 1
    assert out.edges == ((0, 1), (0, 2))  # renumbered then sorted lexicographically
    with pytest.raises(ValueError):
        reindex_canonical(h, [0, 1])  # not a permutation of all vertices


def test_demo_pool_properties():
    pool = demo_pool()
    assert pool.hypergraph.is_connected()
    assert pool.hypergraph.n >= 40
    assert min(pool.hypergraph.degree_sequence()) >= 1
    assert demo_pool().hypergraph == pool.hypergraph  # deterministic


@pytest.mark.parametrize("scale", ["small", "medium", "large"])
def test_subsample_real(scale):
    pool = demo_pool()
    lo, hi = SCALE_RANGES[scale]
    for i in range(10):
        h = subsample_real(pool, GenSpec("generic", scale, "real", derive_seed(9, scale, i)))
        assert lo <= h.n <= hi
        assert h.is_connected()


def test_subsample_target_and_errors():
    pool = demo_pool()
    h = subsample_real(pool, GenSpec("generic", "small", "real", 4), target=7)
    assert h.n == 7
    with pytest.raises(ValueError):
        subsample_real(pool, GenSpec("generic", "small", "real", 4), target=pool.hypergraph.n + 1)


def test_subsample_require():
    pool = demo_pool()
    h = subsample_real(
        pool,
        GenSpec("generic", "small", "real", 11),
        require=lambda g: g.num_edges >= 3,
    )
    assert h.num_edges >= 3


def test_load_pool(tmp_path):
    from hyperbench import save_json

    pool = demo_pool()
    jpath = tmp_path / "pool.json"
    save_json(pool.hypergraph, jpath)
    assert load_pool(jpath).hypergraph == pool.hypergraph

    mpath = tmp_path / "pool.hgr"
    mpath.write_text("2 4\n1 2 3\n3 4\n", encoding="utf-8")
    loaded = load_pool(mpath)
    assert loaded.hypergraph.edges == ((0, 1, 2), (2, 3))


def test_source_pool_rejects_isolated_vertices():
    from hyperbench import Hypergraph

    with pytest.raises(ValueError):
        SourcePool(Hypergraph(3, [(0, 1)]), "bad")


def test_mix_statistics_of_ism_labels():
    # labels are a fair coin per seed; 200 draws should not be one-sided
    hits = sum(
        gen_ism_pair(GenSpec("ISM", "small", "synthetic", derive_seed(12, i))).isomorphic
        for i in range(200)
    )
    sigma = math.sqrt(200 * 0.25)
    assert abs(hits - 100) <= 4 * sigma
