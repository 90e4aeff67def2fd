"""Lattice enumeration against independent oracles, and structural operators."""

import itertools

import numpy as np
import pytest

from orelab._bits import is_subset, mask_from_indices, popcount
from orelab.corpus import build
from orelab.errors import TooLarge
from orelab.groups import Subgroup, closure_mask, generate_subgroup
from orelab.structure import (
    all_chief_factors,
    centralizer,
    centralizer_of_factor,
    centre,
    chief_series,
    core,
    enumerate_subgroups,
    fitting,
    frattini,
    generalized_fitting,
    get_lattice,
    hall,
    hypercentre,
    is_primitive,
    is_subnormal,
    maximal_subgroups,
    minimal_normal_subgroups,
    normal_closure,
    normalizer,
    sylow,
)
from conftest import perm_subgroup


def subset_oracle(G):
    """All subsets of G that are subgroups; exhaustive, order <= 8 only."""
    out = set()
    for bits in range(1 << G.order):
        if bits & 1 == 0:
            continue
        els = [i for i in range(G.order) if (bits >> i) & 1]
        closed = all((bits >> int(G.table[a, b])) & 1 for a in els for b in els)
        if closed:
            out.add(bits)
    return out


def generating_set_oracle(G, max_size):
    """Subgroups as closures of all generating sets up to the given size."""
    out = {1}
    for size in range(1, max_size + 1):
        for gens in itertools.combinations(range(1, G.order), size):
            out.add(closure_mask(G, mask_from_indices(gens)))
    return out


def test_lattice_equals_subset_oracle_small(corpus16):
    for e in corpus16:
        if e.group.order > 8:
            continue
        lat = get_lattice(e.group)
        assert set(lat.masks) == subset_oracle(e.group), str(e.spec)


def test_lattice_counts_against_generating_oracle(S3, S4):
    d8 = build("dihedral(8)")
    for G, expected in ((S3, 6), (S4, 30), (d8, 10)):
        lat = get_lattice(G)
        assert len(lat) == expected
        max_size = max(1, G.order.bit_length() - 1)
        assert set(lat.masks) == generating_set_oracle(G, max_size)


def test_lattice_closure_under_meet_join(corpus24):
    for e in corpus24[:30]:
        lat = get_lattice(e.group)
        for i in range(0, len(lat), max(1, len(lat) // 8)):
            for j in range(0, len(lat), max(1, len(lat) // 8)):
                assert (lat.masks[i] & lat.masks[j]) in lat.index_of
                lat.join(i, j)  # raises KeyError if the join were missing


def test_lattice_too_large():
    with pytest.raises(TooLarge):
        enumerate_subgroups(build("cyclic(8)"), max_subgroups=2)


def test_cyclic_group_lattice():
    for p in (2, 3, 5, 7):
        assert len(get_lattice(build(f"cyclic({p})"))) == 2


def test_core_examples(S4):
    d4 = perm_subgroup(S4, "(1 2 3 4)", "(1 3)")
    assert d4.order == 8
    assert core(S4, d4).order == 4
    c4 = perm_subgroup(S4, "(1 2 3 4)")
    assert core(S4, c4).order == 1
    a4 = perm_subgroup(S4, "(1 2 3)", "(2 3 4)")
    assert core(S4, a4).mask == a4.mask


def test_normal_closure_examples(S4):
    assert normal_closure(S4, perm_subgroup(S4, "(1 2)(3 4)")).order == 4
    assert normal_closure(S4, perm_subgroup(S4, "(1 2)")).order == 24
    a4 = perm_subgroup(S4, "(1 2 3)", "(2 3 4)")
    assert normal_closure(S4, a4).mask == a4.mask


def test_centralizer_normalizer_examples(S4):
    v4 = perm_subgroup(S4, "(1 2)(3 4)", "(1 3)(2 4)")
    assert centralizer(S4, [int(x) for x in v4.elements]).mask == v4.mask
    syl2 = sylow(S4, 2)
    assert normalizer(S4, syl2).mask == syl2.mask
    a4 = perm_subgroup(S4, "(1 2 3)", "(2 3 4)")
    assert normalizer(S4, a4).order == 24


def test_centralizer_of_factor_examples(S4, S3):
    v4 = perm_subgroup(S4, "(1 2)(3 4)", "(1 3)(2 4)")
    triv = generate_subgroup(S4, [])
    from orelab.structure import ChiefFactor

    f = ChiefFactor(S4, v4, triv)
    assert centralizer_of_factor(S4, f).mask == v4.mask
    a3 = perm_subgroup(S3, "(1 2 3)")
    f2 = ChiefFactor(S3, a3, generate_subgroup(S3, []))
    assert centralizer_of_factor(S3, f2).mask == a3.mask


def test_sylow_hall_examples(S4, S3, A5):
    assert sylow(S4, 2).order == 8
    assert sylow(S3, 5).order == 1
    assert hall(A5, {3, 5}) is None
    assert hall(S4, {2, 3}).order == 24
    with pytest.raises(ValueError):
        sylow(S4, 4)


def test_frattini_examples(S4, Q8):
    assert frattini(Q8).mask == centre(Q8).mask and frattini(Q8).order == 2
    assert frattini(S4).order == 1
    assert frattini(build("cyclic(7)")).order == 1


def test_frattini_nongenerator_characterization(corpus24):
    """Phi(G) = non-generators: dropping a Phi-element from a generating set
    keeps it generating; every non-Phi element lies outside some maximal M,
    and M + x generates while M does not."""
    import random

    rnd = random.Random(7)
    for e in corpus24:
        G = e.group
        if G.order > 24:
            continue
        lat = get_lattice(G)
        phi = frattini(G, lat).mask
        for _ in range(4):
            gens = [rnd.randrange(G.order) for _ in range(3)]
            if closure_mask(G, mask_from_indices(gens)) != G.full:
                continue
            for ph in [i for i in range(G.order) if (phi >> i) & 1][:4]:
                with_phi = gens + [ph]
                rest = [g for g in with_phi if g != ph]
                assert closure_mask(G, mask_from_indices(rest)) == G.full
        for x in range(G.order):
            if (phi >> x) & 1:
                continue
            ms = [lat.masks[int(i)] for i in lat.maximal_indices() if not (lat.masks[int(i)] >> x) & 1]
            assert ms, f"non-Phi element {x} inside every maximal subgroup of {e.spec}"
            m = ms[0]
            els = [i for i in range(G.order) if (m >> i) & 1]
            assert closure_mask(G, mask_from_indices(els + [x])) == G.full
            assert closure_mask(G, m) == m


def test_fitting_examples(S4, A5, Q8):
    assert fitting(S4).order == 4
    assert generalized_fitting(A5).order == 60
    assert fitting(Q8).order == 8  # nilpotent group is its own Fitting subgroup


def test_fstar_contains_fitting_soluble_equal(corpus48):
    from orelab.formations import SOLUBLE, is_member

    for e in corpus48[:60]:
        G = e.group
        f = fitting(G)
        fs = generalized_fitting(G)
        assert is_subset(f.mask, fs.mask)
        if is_member(G, SOLUBLE):
            assert f.mask == fs.mask


def test_hypercentre_examples(S3, Q8):
    assert hypercentre(Q8).order == 8
    assert hypercentre(S3).order == 1
    s3c2 = build("product(symmetric(3),cyclic(2))")
    z = hypercentre(s3c2)
    assert z.order == 2 and centre(s3c2).mask == z.mask


def test_minimal_normals_and_chief_series(S4):
    mins = minimal_normal_subgroups(S4)
    assert [m.order for m in mins] == [4]
    cs = chief_series(S4)
    assert [f.order for f in cs.factors] == [4, 3, 2]
    assert [t.order for t in cs.terms] == [1, 4, 12, 24]
    a5 = build("alternating(5)")
    assert [m.order for m in minimal_normal_subgroups(a5)] == [60]
    sl = build("sl23")
    assert [m.order for m in minimal_normal_subgroups(sl)] == [2]


def test_all_chief_factors_contains_series_factors(corpus24):
    for e in corpus24[:25]:
        G = e.group
        lat = get_lattice(G)
        pairs = {(f.upper.mask, f.lower.mask) for f in all_chief_factors(G, lat)}
        cs = chief_series(G, lat)
        for f in cs.factors:
            assert (f.upper.mask, f.lower.mask) in pairs


def test_subnormal_examples(S4):
    assert is_subnormal(S4, perm_subgroup(S4, "(1 2)(3 4)"))
    assert not is_subnormal(S4, perm_subgroup(S4, "(1 2)"))
    assert is_subnormal(S4, Subgroup(S4, S4.full))
    lat = get_lattice(S4)
    i = lat.index(perm_subgroup(S4, "(1 2)(3 4)").mask)
    assert lat.subnormal_depth[i] == 2  # C2 normal in V4 normal in S4


def test_primitive_examples(S4, Q8):
    assert is_primitive(S4)
    assert not is_primitive(Q8)
    assert is_primitive(build("cyclic(5)"))


def test_lattice_flags_consistency(corpus24):
    for e in corpus24[:25]:
        G = e.group
        lat = get_lattice(G)
        for i in range(len(lat)):
            s = lat.subgroups[i]
            if lat.normal[i]:
                assert lat.subnormal_depth[i] <= 1
                assert core(G, s).mask == s.mask
            # core is normal and contains every normal subgroup inside H
            c = core(G, s)
            for j in lat.normal_indices():
                if is_subset(lat.masks[int(j)], s.mask):
                    assert is_subset(lat.masks[int(j)], c.mask)
