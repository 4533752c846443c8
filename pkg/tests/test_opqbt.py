import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carmlab.core_arith import CapacityError, is_prime, primes_up_to
from carmlab.opqbt import (
    IneligibleParameter,
    RingElement,
    SEARCH_CAP,
    UPolicy,
    default_u,
    evaluate,
    is_opqbt_psp,
    is_strong_opqbt,
    opqbt_upper_bound,
    prime_soundness_sweep,
    ring_mul,
    ring_pow,
    search_counterexamples,
)

odd_mod = st.integers(1, 10**4).map(lambda k: 2 * k + 1)


@st.composite
def ring_elements(draw, count=1):
    n = draw(odd_mod)
    u = draw(st.integers(0, n - 1))
    els = [
        RingElement(draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1)), u, n)
        for _ in range(count)
    ]
    return els[0] if count == 1 else els


@given(ring_elements(count=3))
@settings(max_examples=300)
def test_ring_mul_associative_commutative(els):
    e1, e2, e3 = els
    assert ring_mul(e1, e2) == ring_mul(e2, e1)
    assert ring_mul(ring_mul(e1, e2), e3) == ring_mul(e1, ring_mul(e2, e3))


@given(ring_elements(count=2))
@settings(max_examples=300)
def test_norm_is_multiplicative(els):
    e1, e2 = els
    assert ring_mul(e1, e2).norm() == e1.norm() * e2.norm() % e1.n


@given(ring_elements(), st.integers(0, 50), st.integers(0, 50))
@settings(max_examples=200)
def test_ring_pow_is_homomorphic_in_exponent(e, i, j):
    assert ring_mul(ring_pow(e, i), ring_pow(e, j)) == ring_pow(e, i + j)


def test_ring_element_validation():
    with pytest.raises(ValueError):
        RingElement(0, 0, 1, 4)  # even modulus
    with pytest.raises(ValueError):
        RingElement(9, 0, 1, 9)  # unreduced coefficient
    with pytest.raises(ValueError):
        ring_mul(RingElement(1, 0, 3, 7), RingElement(1, 0, 4, 7))


def test_generator_satisfies_minimal_polynomial():
    t = RingElement.generator(5, 101)
    t2 = ring_mul(t, t)
    # T^2 = uT - 1
    assert t2 == RingElement(100, 5, 5, 101)


def test_degenerate_u_rejected():
    for u in (0, 1, 2, 99, 100):
        with pytest.raises(ValueError):
            evaluate(101, u)


def test_shared_factor_u_flagged():
    # u = 5, n = 21: u^2 - 4 = 21
    with pytest.raises(IneligibleParameter):
        evaluate(21, 5)


def test_primes_pass_for_all_eligible_u():
    for p in (5, 7, 11, 101, 997):
        for u in range(3, min(p - 2, 60)):
            try:
                v = evaluate(p, u)
            except IneligibleParameter:
                continue
            assert v.passes_basic and v.passes_strong, (p, u)


def test_prime_soundness_sweep_empty():
    assert prime_soundness_sweep(500) == []


def test_known_lucas_pseudoprimes_fail():
    # classic Lucas-style pseudoprimes die on the sign or Euler conditions
    for n, u in [(323, 3), (377, 3), (5777, 3), (989, 4)]:
        assert not evaluate(n, u).passes_basic


def test_is_opqbt_psp_rejects_primes():
    with pytest.raises(ValueError):
        is_opqbt_psp(101, 5)
    assert not is_strong_opqbt(341, default_u(341))


def test_default_u_properties():
    assert default_u(9) is None  # perfect square
    assert default_u(15) is None  # every jacobi-0 parameter reveals a factor
    u = default_u(341)
    assert u is not None and evaluate(341, u).epsilon == -1


def test_strong_implies_basic_sampled():
    for n in range(9, 3000, 2):
        if is_prime(n):
            continue
        u = default_u(n)
        if u is None:
            continue
        v = evaluate(n, u)
        assert not v.passes_strong or v.passes_basic
        assert (1 << v.k) * v.q_odd == n - v.epsilon and v.q_odd % 2 == 1


def test_search_summary_counts():
    s = search_counterexamples(10**4)
    assert s.hits == []
    composites = sum(
        1 for n in range(9, 10**4 + 1, 2) if not is_prime(n)
    )
    assert s.scanned == composites
    with pytest.raises(CapacityError):
        search_counterexamples(SEARCH_CAP + 1)


def test_exhaustive_policy_small():
    s = search_counterexamples(2000, UPolicy(mode="all-u", u_max=40))
    assert s.hits == []
    with pytest.raises(ValueError):
        UPolicy(mode="sometimes")


def test_upper_bound_reference():
    assert abs(opqbt_upper_bound(10**7) - 10**7 / math.sqrt(375.4)) < 500
    xs = [10**e for e in range(3, 22, 3)]
    vals = [opqbt_upper_bound(float(x)) for x in xs]
    assert vals == sorted(vals)
