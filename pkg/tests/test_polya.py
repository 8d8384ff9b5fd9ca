import itertools

import pytest

from polyabiquad.biquadratic import biquadratic_field
from polyabiquad.intmath import squarefree_part
from polyabiquad.lattice import AmbiguousIdealOracle
from polyabiquad.polya import (chain_indices, cokernel_order, j2_value,
                               kernel_order, polya_order, polya_report,
                               verify_biquad, verify_quad)
from polyabiquad.quadratic import polya_order_quad, quadratic_field


def small_corpus(bound):
    vals = [v for v in range(-bound, bound + 1)
            if v not in (0, 1) and squarefree_part(v) == v]
    seen = set()
    for a, b in itertools.combinations(vals, 2):
        K = biquadratic_field(a, b)
        if K.d not in seen:
            seen.add(K.d)
            yield K


def test_cokernel_examples():
    assert cokernel_order(biquadratic_field(-1, 2)) == 1  # 1+zeta8 generates
    assert cokernel_order(biquadratic_field(-1, -3)) == 1  # i2 = 0
    assert cokernel_order(biquadratic_field(2, 3)) == 1
    # a field where the prime over 2 is nonprincipal: j2 = 1
    K = biquadratic_field(-5, -10)
    assert K.profile.i2 == 1 and j2_value(K) == 1
    assert cokernel_order(K) == 2


def test_kernel_order_branches():
    # imaginary, s_K = 1, i2 = 1, q = 2: (1/(2q)) * 2^2 = 1
    K8 = biquadratic_field(-1, 2)
    assert (K8.profile.s_k, K8.profile.i2, K8.units.q_k) == (1, 1, 2)
    assert kernel_order(K8) == 1
    # real with nu_K = 2, q = 4: (1/(2q)) * 2^3 = 1
    K23 = biquadratic_field(2, 3)
    assert (K23.units.nu_k, K23.units.q_k) == (2, 4)
    assert kernel_order(K23) == 1
    # real with nu_K = 0 branch: (1/q) * prod e_p
    K25 = biquadratic_field(2, 5)
    assert K25.units.nu_k == 0
    assert kernel_order(K25) == K25.profile.product_e // K25.units.q_k == 2


def test_polya_order_named_fields():
    assert polya_order(biquadratic_field(-1, 2)) == 1
    assert polya_order(biquadratic_field(-1, -3)) == 1
    assert polya_order(biquadratic_field(2, 3)) == 1  # exercises max(1, nu_K)


def test_chain_examples():
    assert chain_indices(biquadratic_field(-1, 2))[2] == 2   # sqrt(-1) in K
    assert chain_indices(biquadratic_field(2, 3))[2] == 4    # sqrt(-1) not in K
    for K in (biquadratic_field(-1, -3), biquadratic_field(2, 3),
              biquadratic_field(-1, -5)):
        if K.profile.s_k == 2:
            assert chain_indices(K)[0] == 4  # (H3:H0) = 2^s_K


def test_chain_telescopes_on_corpus():
    for K in small_corpus(8):
        h30, h21, h10, h32 = chain_indices(K)
        assert h32 * h21 * h10 == h30 == 2 ** K.profile.s_k
        assert h10 == (2 if K.units.has_sqrt_minus1 else 4)


def test_report_assembles_and_decomposition_identity():
    for K in small_corpus(7):
        rep = polya_report(K)
        assert rep.po_k * rep.ker == rep.po_sub[0] * rep.po_sub[1] * rep.po_sub[2] * rep.coker
        assert rep.product_e == 2 ** (rep.s_k + rep.i2)
        for v in (*rep.po_sub, rep.ker, rep.coker, rep.po_k, *rep.chain):
            assert v & (v - 1) == 0


def test_report_example_zeta8():
    rep = polya_report(biquadratic_field(-1, 2))
    assert rep.po_sub == (1, 1, 1)
    assert (rep.ker, rep.coker, rep.po_k) == (1, 1, 1)
    assert (rep.q_k, rep.j2, rep.nu_k) == (2, 0, 0)


def test_verify_biquad_ok_and_oracle_reuse():
    K = biquadratic_field(-1, -5)
    orc = AmbiguousIdealOracle(K)
    status, details = verify_biquad(K, orc)
    assert status == "ok"
    assert details["po_oracle"] == details["po_formula"] == 1
    assert details["ker_oracle"] == details["ker_formula"] == 2


def test_verify_quad():
    status, det = verify_quad(quadratic_field(-5))
    assert status == "ok" and det["po_formula"] == 2
    status, det = verify_quad(quadratic_field(3))
    assert status == "ok" and det["po_formula"] == 1


def test_formula_oracle_agreement_with_nontrivial_values():
    # fields exercising j2 = 1, kernel > 1, |Po| > 1
    for pair in ((-5, -10), (-1, -5), (2, 5), (-5, 13), (-6, -10)):
        K = biquadratic_field(*pair)
        status, details = verify_biquad(K)
        assert status == "ok", (pair, details)
