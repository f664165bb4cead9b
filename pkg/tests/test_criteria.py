"""Verdict assembly: both algebraic criteria, case labels, and honest rejects."""

import json

import pytest

from ckforms.criteria import check_sum, classify_triple
from ckforms.embeddings import (
    catalog_lookup,
    diagonal,
    factor_embedding,
    identity_embedding,
    product_algebra,
    product_embedding,
)
from ckforms.realforms import build_real_form


def _lk(key):
    return catalog_lookup(key)


@pytest.fixture(scope="module")
def decomposition_verdict(so44):
    h = _lk("so(4,4):so(3,4):spin")
    l = _lk("so(4,4):so(1,4):block")
    return classify_triple(so44, h, l)


def test_spin_block_decomposition_is_standard(decomposition_verdict):
    v = decomposition_verdict
    assert v.dims == {"g": 28, "h": 21, "l": 10, "intersection": 3}
    assert v.sum_check.holds
    assert (v.sum_check.rank, v.sum_check.expected) == (28, 28)
    assert v.sum_check.method == "full-rank certificate mod 999999937"
    assert v.compact_check.compact
    assert v.compact_check.closed
    assert tuple(v.compact_check.signature) == (0, 3, 0)
    assert v.weyl["status"] == "disjoint"
    assert v.case_label == "Decomposition"
    assert not v.swapped
    assert v.projections is None
    assert v.standard_form
    assert v.reject_reason is None


def test_verdict_serialization_shape(decomposition_verdict):
    blob = decomposition_verdict.to_json()
    assert set(blob) == {
        "triple",
        "dims",
        "sum",
        "intersection",
        "case",
        "swapped",
        "projections",
        "weyl",
        "standard_form",
        "reject_reason",
    }
    assert blob["triple"] == {
        "g": "so(4,4)",
        "h": "so(4,4):so(3,4):spin",
        "l": "so(4,4):so(1,4):block",
    }
    assert blob["intersection"]["signature"] == [0, 3, 0]
    # every leaf must be JSON-serializable
    json.dumps(blob)


def test_verdict_summary_lines(decomposition_verdict):
    text = decomposition_verdict.summary()
    assert "[ok] sum g = h + l (rank 28/28" in text
    assert "[ok] intersection compactly embedded (dim 3, Killing signature (0,3,0))" in text
    assert "[ok] Weyl-orbit disjointness: disjoint" in text
    assert text.endswith("verdict: standard compact form")


def test_zero_intersection_is_trivially_compact():
    g = product_algebra("so(2,4)", "su(2,2)")
    h = factor_embedding(g, 0, identity_embedding(build_real_form("so(2,4)")))
    l = factor_embedding(g, 1, identity_embedding(build_real_form("su(2,2)")))
    v = classify_triple(g, h, l)
    assert v.dims == {"g": 30, "h": 15, "l": 15, "intersection": 0}
    assert v.sum_check.holds
    assert v.compact_check.compact
    assert tuple(v.compact_check.signature) == (0, 0, 0)
    assert v.case_label == "Case1"
    assert v.standard_form


@pytest.fixture(scope="module")
def twisted_diagonal_triple():
    g = product_algebra("so(4,4)", "so(2,4)")
    h = diagonal(g, _lk("so(4,4):so(2,4):block"))
    l = product_embedding(
        g, _lk("so(4,4):so(3,4):spin"), _lk("so(2,4):so(1,4):block")
    )
    return g, h, l


def test_twisted_diagonal_triple_matches_case5(twisted_diagonal_triple):
    g, h, l = twisted_diagonal_triple
    v = classify_triple(g, h, l)
    assert v.dims == {"g": 43, "h": 15, "l": 31, "intersection": 3}
    assert v.case_label == "Case5"
    assert v.swapped
    assert v.standard_form
    assert v.projections["h_decomposable"] is False
    assert v.projections["l_decomposable"] is True


def test_swap_fallback_agrees_with_pre_swapped_order(twisted_diagonal_triple):
    g, h, l = twisted_diagonal_triple
    v = classify_triple(g, l, h)
    assert v.case_label == "Case5"
    assert not v.swapped
    assert v.standard_form
    assert "(after h/l swap)" not in v.summary()
    assert "(after h/l swap)" in classify_triple(g, h, l).summary()


def test_weyl_section_can_be_disabled(twisted_diagonal_triple):
    g, h, l = twisted_diagonal_triple
    v = classify_triple(g, h, l, with_weyl=False)
    assert v.weyl is None
    assert v.standard_form


def test_weyl_section_reports_the_cutoff(so44):
    h = _lk("so(4,4):so(3,4):spin")
    l = _lk("so(4,4):so(1,4):block")
    v = classify_triple(so44, h, l, weyl_cutoff=10)
    assert v.weyl["status"] == "skipped-cutoff"
    assert v.weyl["order"] == 192
    # cutoff does not change the algebraic verdict
    assert v.standard_form
    assert "[--] Weyl-orbit disjointness: skipped-cutoff" in v.summary()


def test_embedding_targets_must_be_the_ambient(so44):
    # the first embedding lands in so(3,4), not the ambient so(4,4)
    h = _lk("so(3,4):so(1,4):block")
    l = _lk("so(4,4):so(1,4):block")
    with pytest.raises(ValueError):
        classify_triple(so44, h, l)


# ---------------------------------------------------------------------------
# negative controls: each must be rejected for the documented reason
# ---------------------------------------------------------------------------

def test_nested_blocks_fail_the_sum_condition(so44):
    h = _lk("so(4,4):so(3,4):block")
    l = _lk("so(4,4):so(1,4):block")
    v = classify_triple(so44, h, l)
    assert not v.sum_check.holds
    assert (v.sum_check.rank, v.sum_check.expected) == (21, 28)
    assert v.sum_check.method == "fraction-free elimination"
    # l sits inside h, so the intersection is all of l and is non-compact
    assert v.dims["intersection"] == 10
    assert tuple(v.compact_check.signature) == (4, 6, 0)
    assert v.case_label == "Reject"
    assert not v.standard_form
    assert v.reject_reason == "sum condition fails: h + l is a proper subspace of g"
    # Weyl enumeration is only run for algebraically standard triples
    assert v.weyl is None
    assert v.summary().endswith(
        "verdict: Reject (sum condition fails: h + l is a proper subspace of g)"
    )


def test_equal_blocks_fail_the_sum_condition(so44):
    e = _lk("so(4,4):so(1,4):block")
    v = classify_triple(so44, e, e)
    assert not v.sum_check.holds
    assert (v.sum_check.rank, v.sum_check.expected) == (10, 28)
    assert v.dims["intersection"] == 10
    assert tuple(v.compact_check.signature) == (4, 6, 0)
    assert not v.standard_form


def test_double_diagonal_fails_the_sum_condition():
    g = product_algebra("so(2,4)", "so(2,4)")
    d = diagonal(g, None)
    v = classify_triple(g, d, d)
    assert v.dims == {"g": 30, "h": 15, "l": 15, "intersection": 15}
    assert not v.sum_check.holds
    assert (v.sum_check.rank, v.sum_check.expected) == (15, 30)
    assert tuple(v.compact_check.signature) == (8, 7, 0)
    assert v.case_label == "Reject"
    assert v.weyl is None


def test_signature_obstruction_rejects_despite_full_sum(so34):
    h = _lk("so(3,4):so(2,4):block")
    l = _lk("so(3,4):g2(2):g2in7")
    v = classify_triple(so34, h, l)
    assert v.dims == {"g": 21, "h": 15, "l": 14, "intersection": 8}
    assert v.sum_check.holds
    assert (v.sum_check.rank, v.sum_check.expected) == (21, 21)
    assert v.sum_check.method == "full-rank certificate mod 999999937"
    assert not v.compact_check.compact
    assert v.compact_check.closed
    assert tuple(v.compact_check.signature) == (4, 4, 0)
    assert not v.standard_form
    assert v.reject_reason == (
        "intersection is not compactly embedded "
        "(restricted Killing form not negative definite)"
    )
    assert v.weyl is None


def test_identical_complex_pair_fails_the_sum_condition(so24):
    e = _lk("so(2,4):su(1,2):complexstruct")
    v = classify_triple(so24, e, e)
    assert not v.sum_check.holds
    assert (v.sum_check.rank, v.sum_check.expected) == (8, 15)
    assert v.dims["intersection"] == 8
    assert tuple(v.compact_check.signature) == (4, 4, 0)
    assert not v.standard_form


def test_sum_check_counts_independent_rows(so44):
    h = _lk("so(4,4):so(3,4):spin")
    l = _lk("so(4,4):so(1,4):block")
    chk = check_sum(so44, h, l)
    assert chk.holds and chk.rank == 28
    chk2 = check_sum(so44, l, l)
    assert not chk2.holds and chk2.rank == 10
