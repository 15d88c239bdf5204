import pytest

from hyperbench import (
    Hypergraph,
    find_3cl,
    find_hhm,
    find_shc,
    format_coloring,
    format_cycle,
    format_path,
    verify_3cl,
    verify_hhm,
    verify_shc,
)
from hyperbench.verify import find_hhm_any


def test_verify_3cl(hstar):
    assert verify_3cl(hstar, [0, 1, 2, 0, 1])
    assert not verify_3cl(hstar, [0, 0, 0, 0, 0])  # every edge monochromatic
    assert verify_3cl(hstar, {0: 0, 1: 1, 2: 0, 3: 1, 4: 0})
    with pytest.raises(ValueError):
        verify_3cl(hstar, [0, 1, 2])  # not total
    with pytest.raises(ValueError):
        verify_3cl(hstar, [0, 1, 2, 3, 0])  # color outside {0,1,2}


def test_verify_shc(hstar):
    # e0 and e2 meet only at v2: a closed pair
    assert verify_shc(hstar, [0, 2])
    assert not verify_shc(hstar, [0, 1, 2])  # |e0 ∩ e1| = 2
    assert not verify_shc(hstar, [0])  # need at least two
    assert not verify_shc(hstar, [0, 0])  # ids must be distinct
    with pytest.raises(IndexError):
        verify_shc(hstar, [0, 7])


def test_verify_shc_triangle():
    h = Hypergraph(6, [(0, 1, 2), (2, 3), (3, 4, 0), (0, 5)])
    assert verify_shc(h, [0, 1, 2])
    assert not verify_shc(h, [0, 1, 3])


def test_verify_hhm(hstar):
    assert verify_hhm(hstar, [0, 0, 1, 2], 0, 4)
    assert verify_hhm(hstar, [2, 1, 0, 0], 4, 0)  # mirrored steps for the reverse walk
    assert not verify_hhm(hstar, [0, 0, 1, 2], 4, 0)  # step edges are direction-bound
    assert not verify_hhm(hstar, [0, 1, 2], 0, 4)  # too short
    assert not verify_hhm(hstar, [2, 2, 1, 0], 0, 4)  # e2 cannot leave v0
    with pytest.raises(ValueError):
        verify_hhm(hstar, [0, 0, 1, 2], 3, 3)
    with pytest.raises(IndexError):
        verify_hhm(hstar, [0, 9, 1, 2], 0, 4)


def test_find_3cl(hstar):
    coloring = find_3cl(hstar)
    assert coloring is not None
    assert verify_3cl(hstar, coloring)
    assert find_3cl(Hypergraph(2, [(0, 1)])) is not None


def test_find_shc(hstar):
    seq = find_shc(hstar)
    assert seq is not None
    assert verify_shc(hstar, seq)
    # chain with fat overlaps has no strict hypercycle
    h = Hypergraph(4, [(0, 1, 2), (1, 2, 3)])
    assert find_shc(h) is None


def test_find_hhm(hstar):
    path = find_hhm(hstar, 0, 4)
    assert path is not None
    assert verify_hhm(hstar, path, 0, 4)
    assert find_hhm(Hypergraph(4, [(0, 1), (2, 3)]), 0, 3) is None


def test_find_hhm_any(hstar):
    got = find_hhm_any(hstar)
    assert got is not None
    path, s, t = got
    assert verify_hhm(hstar, path, s, t)
    # a star forces >2 leaves: no hamiltonian traversal at all
    star = Hypergraph(4, [(0, 1), (0, 2), (0, 3)])
    assert find_hhm_any(star) is None


def test_format_helpers():
    assert format_coloring([0, 1, 2]) == "Coloring:[v0:c0, v1:c1, v2:c2]"
    assert format_cycle([0, 2]) == "Cycle:[e0, e2]"
    assert format_path((1, 0)) == "Path:[e1, e0]"
