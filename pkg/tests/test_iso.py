"""Canonical certificates, isomorphism testing and automorphism groups."""

import hashlib
import random
from itertools import permutations

import pytest

from embedrank.designs import IncidenceStructure, resolutions
from embedrank.errors import WrongParameters
from embedrank.geometry import ag_design, pg_design
from embedrank.iso import (
    are_isomorphic,
    automorphism_group,
    canonical_cert,
    orbits,
    resolution_orbits,
)


def _relabel(design, rng):
    perm = list(range(design.v))
    rng.shuffle(perm)
    blocks = [tuple(sorted(perm[x] for x in blk)) for blk in design.blocks]
    rng.shuffle(blocks)
    return IncidenceStructure(design.v, blocks)


def _brute_aut_order(design):
    """Count point permutations fixing the block multiset (small v only)."""
    blocks = sorted(design.blocks)
    count = 0
    for perm in permutations(range(design.v)):
        image = sorted(tuple(sorted(perm[x] for x in blk)) for blk in design.blocks)
        if image == blocks:
            count += 1
    return count


def test_cert_invariant_under_relabeling(fano):
    rng = random.Random(201)
    base = canonical_cert(fano)
    for _ in range(100):
        other = _relabel(fano, rng)
        cert = canonical_cert(other)
        assert cert.digest == base.digest
        assert cert.payload == base.payload
        assert cert == base
    for _ in range(30):
        v = rng.randrange(2, 9)
        blocks = [
            tuple(sorted(rng.sample(range(v), rng.randrange(1, v + 1))))
            for _ in range(rng.randrange(1, 7))
        ]
        d = IncidenceStructure(v, blocks)
        assert canonical_cert(_relabel(d, rng)) == canonical_cert(d)


def test_cert_fields(fano):
    cert = canonical_cert(fano)
    assert cert.digest == hashlib.sha256(cert.payload).hexdigest()
    assert sorted(cert.point_order) == list(range(7))
    lines = cert.payload.decode().splitlines()
    assert lines[0] == "7 7"
    parsed = IncidenceStructure(7, [tuple(map(int, ln.split())) for ln in lines[1:]])
    assert are_isomorphic(parsed, fano)
    assert cert != canonical_cert(pg_design(3, 2, 2))


def test_same_profile_nonisomorphic():
    hexagon = IncidenceStructure(6, [(i, (i + 1) % 6) for i in range(6)])
    triangles = IncidenceStructure(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert sorted(hexagon.block_sizes()) == sorted(triangles.block_sizes())
    assert not are_isomorphic(hexagon, triangles)
    assert automorphism_group(hexagon).order() == 12
    assert automorphism_group(triangles).order() == 72
    assert _brute_aut_order(hexagon) == 12
    assert _brute_aut_order(triangles) == 72


def test_size_mismatch_short_circuits(fano, k4_edges):
    assert not are_isomorphic(fano, k4_edges)
    assert not are_isomorphic(fano, IncidenceStructure(7, fano.blocks[:-1]))


def test_classical_group_orders(fano, k4_edges):
    assert automorphism_group(fano).order() == 168
    assert _brute_aut_order(fano) == 168
    assert automorphism_group(k4_edges).order() == 24
    assert automorphism_group(pg_design(3, 2, 2)).order() == 20160


def test_group_order_matches_brute_force():
    rng = random.Random(202)
    for _ in range(12):
        v = rng.randrange(2, 7)
        blocks = [
            tuple(sorted(rng.sample(range(v), rng.randrange(1, v + 1))))
            for _ in range(rng.randrange(1, 6))
        ]
        d = IncidenceStructure(v, blocks)
        assert automorphism_group(d).order() == _brute_aut_order(d), d.blocks


def test_generators_permute_blocks(fano):
    group = automorphism_group(fano)
    assert not group.deduplicated
    v = fano.v
    for g in group.generators:
        assert sorted(g) == list(range(group.degree))
        for j, blk in enumerate(fano.blocks):
            image = tuple(sorted(g[x] for x in blk))
            assert fano.blocks[g[v + j] - v] == image


def test_orbit_partitions(fano):
    group = automorphism_group(fano)
    assert orbits(group, "points") == [list(range(7))]
    assert orbits(group, "blocks") == [list(range(7))]
    path = IncidenceStructure(3, [(0, 1), (1, 2)])
    pg = automorphism_group(path)
    assert pg.order() == 2
    assert orbits(pg, "points") == [[0, 2], [1]]
    assert orbits(pg, "blocks") == [[0, 1]]
    with pytest.raises(WrongParameters):
        orbits(pg, "flags")


def test_multiset_blocks():
    doubled = IncidenceStructure(4, [(0, 1), (0, 1), (2, 3), (2, 3)])
    single = IncidenceStructure(4, [(0, 1), (2, 3)])
    group = automorphism_group(doubled)
    assert group.deduplicated
    assert group.order() == automorphism_group(single).order() == 8
    assert not are_isomorphic(doubled, single)
    other = IncidenceStructure(4, [(2, 3), (0, 1), (2, 3), (0, 1)])
    assert are_isomorphic(doubled, other)
    assert b"2x" in canonical_cert(doubled).payload


def test_resolution_orbits_planes(k4_edges):
    planes, _ = ag_design(3, 2, 2)
    for design in (planes, k4_edges):
        sols = resolutions(design)
        assert len(sols) == 1
        group = automorphism_group(design)
        assert resolution_orbits(group, sols) == [[0]]


def test_resolution_orbits_validation(k4_edges):
    group = automorphism_group(k4_edges)
    sols = resolutions(k4_edges)
    with pytest.raises(WrongParameters):
        resolution_orbits(group, sols + sols)  # duplicates
    doubled = IncidenceStructure(4, [(0, 1), (0, 1), (2, 3), (2, 3)])
    with pytest.raises(WrongParameters):
        resolution_orbits(automorphism_group(doubled), sols)
