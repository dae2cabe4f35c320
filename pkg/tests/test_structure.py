import pytest

from artinalg import (
    algebra_from_text, direct_sum_modules, fibre_product, free_module,
    maximal_ideal_module, regular_module, residue_field, resolution_of_k,
)
from artinalg.structure import (
    DECOMPOSE_TRIALS, UnsupportedFieldError, betti_boundedness_probe,
    bn_hml_table, burch_depth_zero_test, decompose, exceptional_test,
    golod_check, monotonicity_check, serre_bound_check, simple_summand_test,
    star_property_scan, summand_test, tachikawa_probe,
    verify_golod_decomposition,
)


@pytest.fixture(scope="module")
def sf():
    return algebra_from_text("field F 101; vars x, y; rels x^2, x*y, y^2;")


@pytest.fixture(scope="module")
def ci():
    return algebra_from_text("field F 101; vars x, y; rels x^2, y^2;")


@pytest.fixture(scope="module")
def hs():
    return algebra_from_text("field F 101; vars x; rels x^2;")


@pytest.fixture(scope="module")
def r1q():
    return algebra_from_text(
        "field Q; vars x, y, z; rels x^3, y^3, z^3, x*y, x*z^2;")


@pytest.fixture(scope="module")
def r3q():
    return algebra_from_text("field Q; vars x, z; rels x^4, x^2*z^2, z^4;")


@pytest.fixture(scope="module")
def r4():
    s = algebra_from_text("field F 101; vars x, y; rels x^2, y^2;")
    t = algebra_from_text("field F 101; vars z, w; rels z^2, w^2;")
    return fibre_product(s, t)


def test_serre_slacks(sf, ci):
    assert serre_bound_check(sf, 6) == [0] * 7
    slacks = serre_bound_check(ci, 3)
    assert slacks[0] == 0 and slacks[2] == 0 and slacks[3] == 1


def test_golod_check(sf, ci, hs):
    assert golod_check(sf, 8).verdict == "GolodToPrecision"
    rep = golod_check(ci)
    assert rep.verdict == "NotGolod" and rep.first_failure == 3
    assert golod_check(hs).is_golod_to_precision


def test_bn_hml_table(sf, ci):
    t = bn_hml_table(sf, 6, 2)
    assert all(t.bn.values()) and all(t.hml.values())
    t2 = bn_hml_table(ci, 6, 2)
    assert t2.bn[0] and not t2.bn[3]
    assert not all(t2.hml.values())
    # the three per-degree conditions agree for every algebra and degree
    for table in (t, t2):
        for a, b, c in table.equivalences.values():
            assert a == b == c


def test_bn_implies_hml(sf):
    # if (B_n) holds for all n >= a + b in range then (H_{a,b}) holds
    t = bn_hml_table(sf, 8, 2)
    e = sf.e
    for (a, b), ok in t.hml.items():
        if a <= e and all(t.bn[n] for n in range(a + b, 9)):
            assert ok


def test_simple_summand_paper_examples(r1q, r3q):
    res1 = resolution_of_k(r1q, 3)
    assert not simple_summand_test(res1.syzygy(2)).ok
    cert = simple_summand_test(res1.syzygy(3))
    assert cert.ok and cert.verify()
    res3 = resolution_of_k(r3q, 3)
    assert not simple_summand_test(res3.syzygy(2)).ok
    assert simple_summand_test(res3.syzygy(3)).ok


def test_simple_summand_direct_sum(ci):
    S, _, _ = direct_sum_modules([residue_field(ci), regular_module(ci)])
    cert = simple_summand_test(S)
    assert cert.ok and cert.verify()
    assert not simple_summand_test(regular_module(ci)).ok


def test_decompose_examples(sf, ci):
    rep = decompose(maximal_ideal_module(sf))
    assert rep.multiplicity_map() == [(1, 2)]
    assert rep.verify(maximal_ideal_module(sf))
    rep2 = decompose(resolution_of_k(ci, 2).syzygy(2))
    assert rep2.multiplicity_map() == [(5, 1)]
    rep3 = decompose(free_module(ci, 2))
    assert rep3.multiplicity_map() == [(ci.dim, 2)]
    assert rep3.seed is not None and rep3.verify(free_module(ci, 2))


def test_decompose_rejects_rationals():
    A = algebra_from_text("field Q; vars x, y; rels x^2, y^2;")
    with pytest.raises(UnsupportedFieldError):
        decompose(regular_module(A))


def test_summand_test_examples(sf, r4):
    m = maximal_ideal_module(sf)
    cert = summand_test(residue_field(sf), m)
    assert cert.ok and cert.verify()
    refut = summand_test(regular_module(sf), residue_field(sf))
    assert not refut.ok and refut.refutation == "Dimension"
    res = resolution_of_k(r4, 2)
    cert2 = summand_test(res.syzygy(1), res.syzygy(2))
    assert cert2.ok and cert2.verify()


def test_summand_test_free_over_rationals():
    A = algebra_from_text("field Q; vars x, y; rels x^2, y^2;")
    R = regular_module(A)
    S, _, _ = direct_sum_modules([residue_field(A), R])
    cert = summand_test(R, S)
    assert cert.ok and cert.verify()
    with pytest.raises(UnsupportedFieldError):
        summand_test(maximal_ideal_module(A), free_module(A, 2))


def test_star_scan(hs, ci, r4):
    assert (0, 1) in star_property_scan(hs, 3)
    assert star_property_scan(ci, 4) == []
    assert (1, 2) in star_property_scan(r4, 3, max_pair_dim=400)


def test_burch(sf, ci, r3q):
    assert burch_depth_zero_test(sf)
    assert not burch_depth_zero_test(ci)
    assert not burch_depth_zero_test(r3q)


def test_exceptional(sf, r1q, r4):
    assert exceptional_test(r4, 4)
    assert not exceptional_test(r1q, 3)
    assert not exceptional_test(sf, 2)


def test_golod_decomposition(sf, ci, hs):
    assert verify_golod_decomposition(sf, 0, mode="structural").ok
    assert verify_golod_decomposition(hs, 0, mode="structural").ok
    rep = verify_golod_decomposition(ci, 0, mode="numeric")
    assert not rep.ok and rep.details
    for A in (sf, ci, hs):
        num = verify_golod_decomposition(A, 2, mode="numeric")
        assert num.ok == num.golod.is_golod_to_precision


def test_monotonicity(sf, ci, hs):
    rep = monotonicity_check(sf, residue_field(sf), 0, 1, 8)
    assert rep.ok and rep.branch == "monotone"
    # the proof identity: beta_{n+1}(k) = beta_n(k) + dim Tor_n(N, k)
    assert all(passed for *_, passed in rep.checks)
    dich = monotonicity_check(hs, residue_field(hs), 1, 0, 4)
    assert dich.ok and dich.branch == "hypersurface-dichotomy"
    with pytest.raises(ValueError):
        monotonicity_check(ci, residue_field(ci), 1, 2, 6)


def test_monotonicity_fibre_product(r4):
    rep = monotonicity_check(r4, residue_field(r4), 1, 2, 4)
    assert rep.ok and rep.period == 1


def test_tachikawa_probe(sf, ci, hs):
    rep = tachikawa_probe(ci, 4)
    assert rep.ext_dims == [0, 0, 0, 0] and rep.consistent
    rep2 = tachikawa_probe(sf, 4)
    assert rep2.first_nonvanishing == 1 and rep2.consistent
    assert rep2.star_pairs  # (*) holds, not a hypersurface: Ext must show up
    rep3 = tachikawa_probe(hs, 4)
    assert rep3.first_nonvanishing is None and rep3.is_hypersurface


def test_boundedness_probe(sf, hs, ci):
    rep = betti_boundedness_probe(sf, 6)
    assert rep.strictly_increasing_tail
    rep2 = betti_boundedness_probe(hs, 6)
    assert rep2.constant_tail
    rep3 = betti_boundedness_probe(ci, 6)
    assert rep3.constant_tail  # Gorenstein: canonical module is free


def test_decompose_trial_budget_recorded(sf):
    rep = decompose(maximal_ideal_module(sf), seed=7)
    assert rep.seed == 7
    assert DECOMPOSE_TRIALS == 64
