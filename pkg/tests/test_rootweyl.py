"""Restricted root data and little Weyl group action on split parts."""
from fractions import Fraction

import numpy as np
import pytest

from ckforms.exactlin import Subspace, fvec
from ckforms.embeddings import adapted_split_part, catalog_lookup, product_algebra
from ckforms.rootweyl import (
    WeylCutoffError,
    chamber_sort,
    split_data,
    weyl_disjoint,
    weyl_elements,
    weyl_order,
)


@pytest.mark.parametrize(
    "key,order",
    [
        ("so(2,3)", 8),        # B2: 2^2 * 2!
        ("so(3,4)", 48),       # B3
        ("so(4,4)", 192),      # D4: 2^3 * 4!
        ("su(2,2)", 8),        # C2
        ("g2(2)", 12),
        ("so(8,8)", 5160960),  # D8
    ],
)
def test_weyl_group_orders(key, order):
    from ckforms.realforms import build_real_form

    assert weyl_order(split_data(build_real_form(key))) == order


def test_weyl_order_multiplies_over_product_factors():
    sd = split_data(product_algebra("so(4,4)", "so(3,4)"))
    assert weyl_order(sd) == 192 * 48


def test_weyl_elements_enumerate_the_full_group(so34):
    sd = split_data(so34)
    mats = list(weyl_elements(sd))
    assert len(mats) == 48
    as_tuples = {tuple(tuple(int(x) for x in row) for row in m) for m in mats}
    assert len(as_tuples) == 48


def test_weyl_elements_respect_the_cutoff():
    sd = split_data(product_algebra("so(8,8)", "so(8,8)"))
    assert weyl_order(sd) == 5160960 ** 2
    with pytest.raises(WeylCutoffError):
        weyl_elements(sd, cutoff=10 ** 7)


def test_g2_weyl_group_is_dihedral_of_order_twelve():
    from ckforms.realforms import build_real_form

    sd = split_data(build_real_form("g2(2)"))
    mats = list(weyl_elements(sd))
    assert len(mats) == 12
    # closure under multiplication
    key = lambda m: tuple(tuple(x for x in row) for row in m)
    have = {key(m) for m in mats}
    for a in mats[:4]:
        for b in mats:
            assert key(a @ b) in have


def test_chamber_sort_is_a_weyl_representative(so44):
    sd = split_data(so44)
    out = chamber_sort(sd, [3, -1, 2, 0])
    assert list(out) == [3, 2, 1, 0]
    # type D keeps the parity of sign flips when no coordinate vanishes
    out2 = chamber_sort(sd, [-5, 1, -2, -4])
    assert list(out2) == [5, 4, 2, -1]


def test_chamber_sort_fixes_already_sorted_vectors(so34):
    sd = split_data(so34)
    assert list(chamber_sort(sd, [4, 2, 1])) == [4, 2, 1]
    assert list(chamber_sort(sd, [4, 2, -1])) == [4, 2, 1]


def test_chamber_sort_is_invariant_on_weyl_orbits(so44):
    sd = split_data(so44)
    rng = np.random.default_rng(13)
    mats = list(weyl_elements(sd))
    x = fvec([7, 5, 2, 1])
    ref = list(chamber_sort(sd, x))
    for idx in rng.integers(0, len(mats), size=12):
        moved = mats[idx] @ x
        assert list(chamber_sort(sd, moved)) == ref


def test_disjointness_of_the_frozen_decomposition_pair(so44):
    sd = split_data(so44)
    vh = adapted_split_part(catalog_lookup("so(4,4):so(3,4):spin"))
    vl = adapted_split_part(catalog_lookup("so(4,4):so(1,4):block"))
    ok, witness = weyl_disjoint(sd, vh, vl)
    assert ok and witness is None


def test_self_intersection_is_witnessed_by_the_identity(so44):
    sd = split_data(so44)
    v = adapted_split_part(catalog_lookup("so(4,4):so(1,4):block"))
    ok, witness = weyl_disjoint(sd, v, v)
    assert not ok
    assert witness is not None
    # witness = (Weyl element, vector in w(V_h) and V_l); here w is the identity
    w, vec = witness
    assert np.array_equal(np.array(w, dtype=float), np.eye(sd.rank))
    assert any(x != 0 for x in vec)
    assert v.contains(fvec([x for x in vec]))


def test_disjointness_respects_the_cutoff(so44):
    sd = split_data(so44)
    vh = adapted_split_part(catalog_lookup("so(4,4):so(3,4):spin"))
    vl = adapted_split_part(catalog_lookup("so(4,4):so(1,4):block"))
    with pytest.raises(WeylCutoffError):
        weyl_disjoint(sd, vh, vl, cutoff=10)


def test_split_gram_is_positive_definite(so44):
    sd = split_data(so44)
    G = np.array([[float(x) for x in row] for row in sd.gram])
    assert np.all(np.linalg.eigvalsh(G) > 0)
    # B-norms of basis boosts agree within a simple factor
    assert all(sd.gram[i][i] == sd.gram[0][0] for i in range(sd.rank))
