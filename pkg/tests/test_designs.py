"""Incidence structures: verification, restrictions, resolutions, block types."""

import random
import warnings

import pytest

from embedrank.designs import (
    IncidenceStructure,
    derived,
    emit_des,
    emit_json,
    good_block,
    intersection_profile,
    is_affine_resolvable,
    is_simple,
    make_resolution,
    normal_block,
    parallel_classes,
    parse_des,
    parse_json,
    residual,
    resolutions,
    verify_tdesign,
)
from embedrank.errors import BadIndex, CapExceeded, NonUniformBlockSize, WrongParameters
from embedrank.geometry import ag_design, pg_design


def test_verify_fano(fano):
    params = verify_tdesign(fano, 2)
    assert (params.v, params.k, params.lam) == (7, 3, 1)
    assert params.b == 7 and params.r == 3
    assert params.symmetric and params.fisher_ok
    assert params.lambdas == (7, 3, 1)
    assert verify_tdesign(fano, 3) is None


def test_verify_three_design():
    planes, _ = ag_design(3, 2, 2)
    p2 = verify_tdesign(planes, 2)
    assert (p2.v, p2.k, p2.lam) == (8, 4, 3)
    p3 = verify_tdesign(planes, 3)
    assert p3.lam == 1
    assert p3.lambdas == (14, 7, 3, 1)


def test_verify_rejects_near_designs(fano):
    broken = IncidenceStructure(7, fano.blocks[:-1])
    assert verify_tdesign(broken, 2) is None
    ragged = IncidenceStructure(4, [(0, 1), (2, 3), (0, 1, 2)])
    assert verify_tdesign(ragged, 2) is None


def test_k4_edge_design(k4_edges):
    params = verify_tdesign(k4_edges, 2)
    assert (params.v, params.k, params.lam) == (4, 2, 1)
    aff = is_affine_resolvable(k4_edges)
    assert aff is not None
    q, mu, res = aff
    assert (q, mu) == (2, 1)
    assert res.num_classes == 3
    assert len(parallel_classes(k4_edges)) == 3
    assert len(resolutions(k4_edges)) == 1


def test_residual_and_derived_fano(fano):
    res = residual(fano, 0)
    assert res.v == 4 and res.b == 6
    assert set(res.block_sizes()) == {2}
    der = derived(fano, 0)
    assert der.v == 3 and der.b == 6
    assert set(der.block_sizes()) == {1}
    # restriction sizes partition each block
    for j in range(1, fano.b):
        cut = sum(1 for x in fano.blocks[j] if x in fano.blocks[0])
        assert cut + len(res.blocks[j - 1]) == len(fano.blocks[j])


def test_keep_empty_flag(ag34):
    der_drop = derived(ag34, 0)
    der_keep = derived(ag34, 0, keep_empty=True)
    assert der_drop.b == 80
    assert der_keep.b == 83
    assert sum(1 for blk in der_keep.blocks if not blk) == 3
    res_keep = residual(ag34, 0, keep_empty=True)
    assert res_keep.b == 83
    with pytest.raises(BadIndex):
        residual(ag34, 84)


def test_intersection_profile(fano, ag34):
    assert intersection_profile(fano) == {1: 21}
    prof = intersection_profile(ag34)
    # affine resolvable: non-parallel blocks meet in mu = 4, parallel in 0
    assert set(prof) == {0, 4}
    assert prof[0] == 21 * 6  # 21 classes, C(4,2) disjoint pairs each


def test_is_simple(fano, ag34):
    assert is_simple(fano)
    assert is_simple(ag34)
    assert not is_simple(derived(ag34, 0))
    doubled = IncidenceStructure(4, [(0, 1), (0, 1), (2, 3), (2, 3)])
    assert not is_simple(doubled)


def test_affine_resolvable_detection(fano, ag34, ag34_resolution, pg34):
    assert is_affine_resolvable(fano) is None
    assert is_affine_resolvable(pg34) is None
    aff = is_affine_resolvable(ag34)
    assert aff is not None
    q, mu, res = aff
    assert (q, mu) == (4, 4)
    assert res.num_classes == 21 and res.class_size == 4
    assert res.as_sets() == ag34_resolution.as_sets()


def test_resolutions_of_affine_geometry():
    planes, resolution = ag_design(3, 2, 2)
    assert len(parallel_classes(planes)) == 7
    sols = resolutions(planes)
    assert len(sols) == 1
    assert sols[0].as_sets() == resolution.as_sets()


def test_resolutions_limit(k4_edges):
    assert len(resolutions(k4_edges, limit=1)) == 1
    with pytest.raises(CapExceeded):
        resolutions(k4_edges, limit=0)


def test_make_resolution_validation(k4_edges):
    good = [(0, 5), (1, 4), (2, 3)]
    res = make_resolution(k4_edges, good)
    assert res.num_classes == 3
    with pytest.raises(WrongParameters):
        make_resolution(k4_edges, [(0, 1), (2, 3), (4, 5)])  # blocks 0,1 share a point
    with pytest.raises(WrongParameters):
        make_resolution(k4_edges, [(0, 5), (1, 4)])  # does not partition
    with pytest.raises(BadIndex):
        make_resolution(k4_edges, [(0, 9), (1, 4), (2, 3)])


def test_good_block_structure(ag34_gb):
    gb = ag34_gb
    assert (gb.q, gb.n, gb.mu) == (4, 3, 4)
    s_params = verify_tdesign(gb.s, 2)
    assert (s_params.v, s_params.k, s_params.lam) == (16, 4, 1)
    assert is_simple(gb.s)
    assert gb.substructure.v == 48 and gb.substructure.b == 80
    assert set(gb.substructure.block_sizes()) == {12}
    assert gb.resolution.num_classes == 20 and gb.resolution.class_size == 4
    assert len(gb.parallel) == 3
    s, res = gb  # tuple view
    assert s is gb.s and res is gb.resolution


def test_good_block_grid():
    for n, q in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)]:
        design, _ = ag_design(n, q, n - 1)
        for j in range(design.b):
            assert good_block(design, j) is not None, (n, q, j)


def test_good_block_requires_family(fano, pg34):
    with pytest.raises(WrongParameters):
        good_block(fano, 0)
    with pytest.raises(WrongParameters):
        good_block(pg34, 0)
    with pytest.raises(BadIndex):
        good_block(fano, 7)


def test_good_blocks_of_bundled_designs(e1, e2):
    for design in (e1, e2):
        goods = [j for j in range(design.b) if good_block(design, j) is not None]
        assert len(goods) == 4


def test_normal_block_pg(pg34):
    core = normal_block(pg34, 0, 4)
    params = verify_tdesign(core, 2)
    assert (params.v, params.k, params.lam) == (21, 5, 1)
    assert params.symmetric


def test_normal_block_degenerate(fano):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        core = normal_block(fano, 2, 2)
    assert core is not None
    assert core.v == 3 and all(len(blk) == 1 for blk in core.blocks)
    assert len(caught) == 1 and "degenerate" in str(caught[0].message)


def test_normal_block_rejects(fano, ag34):
    with pytest.raises(WrongParameters):
        normal_block(ag34, 0, 4)  # not symmetric
    with pytest.raises(WrongParameters):
        normal_block(fano, 0, 3)  # k does not fit the q-family


def test_des_round_trip(fano, ag34):
    rng = random.Random(31)
    for design in (fano, ag34):
        text = emit_des(design)
        back = parse_des(text)
        assert back.v == design.v and back.blocks == design.blocks
        assert emit_des(back) == text
    # random structures round-trip too, including empty blocks
    for _ in range(20):
        v = rng.randrange(1, 12)
        blocks = []
        for _ in range(rng.randrange(1, 8)):
            blocks.append(tuple(sorted(rng.sample(range(v), rng.randrange(0, v + 1)))))
        d = IncidenceStructure(v, blocks)
        assert parse_des(emit_des(d)).blocks == d.blocks


def test_json_round_trip(fano):
    text = emit_json(fano)
    back = parse_json(text)
    assert back.v == fano.v and back.blocks == fano.blocks and back.name == fano.name


def test_uniform_k_error():
    d = IncidenceStructure(4, [(0, 1), (0, 1, 2)])
    with pytest.raises(NonUniformBlockSize):
        d.uniform_k()


def test_block_constructor_validation():
    with pytest.raises(BadIndex):
        IncidenceStructure(3, [(0, 3)])
    with pytest.raises(BadIndex):
        IncidenceStructure(3, [(1, 1)])
