import json

import pytest

from syzdepth.exact import numerator_std
from syzdepth.multigraded import (
    Decomposition,
    HilbertPiece,
    LEX_GREEDY,
    SCD,
    STRATEGIES,
    build_upper_decomposition,
    elements,
    hdepth_multi_upper,
    level_injection,
    level_masks,
    mask_of,
    numerator_multi,
    popcount,
    verify_hilbert_decomposition,
)


def test_mask_helpers():
    assert mask_of([1, 3]) == 0b101
    assert elements(0b101) == (1, 3)
    assert popcount(0b1011) == 3


def test_numerator_multi_examples():
    q = numerator_multi(3, 2)
    assert q.coefficient(mask_of([1, 2])) == 1
    assert q.coefficient(mask_of([1, 3])) == 1
    assert q.coefficient(mask_of([2, 3])) == 1
    assert q.coefficient(mask_of([1, 2, 3])) == -1
    assert q.coefficient(mask_of([1])) == 0

    q = numerator_multi(2, 1)
    assert q.coefficient(mask_of([1])) == 1
    assert q.coefficient(mask_of([2])) == 1
    assert q.coefficient(mask_of([1, 2])) == -1

    q = numerator_multi(6, 6)
    assert len(q) == 1 and q.coefficient(mask_of(range(1, 7))) == 1


def test_numerator_multi_cap():
    with pytest.raises(ValueError):
        numerator_multi(30, 2)


def test_specialization_recovers_standard_numerator():
    for n in range(1, 17):
        for k in range(1, n + 1):
            assert numerator_multi(n, k).specialize_standard() == numerator_std(n, k), (n, k)


def test_level_injection_examples():
    m = level_injection(5, 3, LEX_GREEDY)
    assert m.pairs[mask_of([1, 2, 3])] == mask_of([1, 2])
    assert m.pairs[mask_of([1, 2, 4])] == mask_of([1, 4])
    assert m.pairs[mask_of([2, 4, 5])] == mask_of([2, 4])
    assert m.pairs[mask_of([3, 4, 5])] == mask_of([3, 4])

    top = level_injection(5, 5, LEX_GREEDY)
    assert top.pairs[mask_of([1, 2, 3, 4, 5])] == mask_of([1, 2, 3, 4])

    for strategy in STRATEGIES:
        m = level_injection(2, 2, strategy)
        image = m.pairs[mask_of([1, 2])]
        assert popcount(image) == 1
    assert level_injection(2, 2, LEX_GREEDY).pairs[mask_of([1, 2])] == mask_of([1])


def test_level_injection_domain():
    with pytest.raises(ValueError):
        level_injection(4, 2, SCD)  # u = n/2 is out of domain
    with pytest.raises(ValueError):
        level_injection(5, 2, SCD)
    with pytest.raises(ValueError):
        level_injection(5, 3, "bogus")


def test_level_injection_valid_all_strategies():
    for n in range(1, 17):
        for u in range(n // 2 + 1, n + 1):
            if 2 * u <= n:
                continue
            for strategy in STRATEGIES:
                m = level_injection(n, u, strategy)
                m.validate()
                assert set(m.pairs) == set(level_masks(n, u))


def test_build_upper_decomposition_2_1():
    dec = build_upper_decomposition(2, 1, LEX_GREEDY)
    got = {(p.shift, p.removed) for p in dec.pieces}
    assert got == {(mask_of([1]), 2), (mask_of([2]), None)}


def test_build_upper_decomposition_5_2_level_counts():
    dec = build_upper_decomposition(5, 2, LEX_GREEDY)
    lvl2 = [p for p in dec.pieces if popcount(p.shift) == 2]
    assert len(lvl2) == 10
    assert all(p.removed is not None for p in lvl2)  # |Y_3| = 10 injects fully


def test_build_upper_decomposition_top_syzygy():
    for n in range(2, 10):
        dec = build_upper_decomposition(n, n - 1, SCD)
        assert len(dec.pieces) == n
        matched = [p for p in dec.pieces if p.removed is not None]
        assert len(matched) == 1
        assert verify_hilbert_decomposition(dec).accepted


def test_verify_accepts_all_strategies():
    for n in range(2, 13):
        for k in range(n // 2, n):
            if k < 1:
                continue
            for strategy in STRATEGIES:
                dec = build_upper_decomposition(n, k, strategy)
                report = verify_hilbert_decomposition(dec)
                assert report.accepted, (n, k, strategy, report.detail)


def test_verify_rejects_corruption():
    dec = build_upper_decomposition(5, 2, SCD)
    broken = Decomposition(dec.n, dec.k, dec.strategy, dec.pieces[1:])
    report = verify_hilbert_decomposition(broken)
    assert not report.accepted
    assert report.witness_subset == dec.pieces[0].shift


def test_verify_rejects_removed_inside_shift():
    dec = build_upper_decomposition(2, 1, LEX_GREEDY)
    bad = Decomposition(2, 1, "manual", (HilbertPiece(mask_of([1]), 1), HilbertPiece(mask_of([2]), None)))
    report = verify_hilbert_decomposition(bad)
    assert not report.accepted


def test_piece_free_counts():
    for n in range(2, 13):
        for k in range(max(1, n // 2), n):
            dec = build_upper_decomposition(n, k, SCD)
            assert all(p.free_count(n) >= n - 1 for p in dec.pieces)


def test_hdepth_multi_upper():
    assert hdepth_multi_upper(5, 2).value == 4
    assert hdepth_multi_upper(2, 1).value == 1
    assert hdepth_multi_upper(6, 3).value == 5
    cert = hdepth_multi_upper(2, 1, LEX_GREEDY)
    assert cert.nonfree_witness_coeff < 0
    assert cert.nonfree_witness_subset == mask_of([1, 2])
    assert cert.min_free_count == cert.n - 1


def test_hdepth_multi_upper_domain():
    with pytest.raises(ValueError):
        hdepth_multi_upper(6, 2)  # below the upper range
    with pytest.raises(ValueError):
        hdepth_multi_upper(6, 6)  # the free module is excluded


def test_decomposition_json_round_trip():
    dec = build_upper_decomposition(6, 3, SCD)
    data = json.loads(json.dumps(dec.to_json_dict()))
    back = Decomposition.from_json_dict(data)
    assert back.n == dec.n and back.k == dec.k
    assert back.pieces == dec.pieces
    assert verify_hilbert_decomposition(back).accepted
