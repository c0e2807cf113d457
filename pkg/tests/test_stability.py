import pytest

from cherednik.fields import CoeffDomain
from cherednik.poly import ReducedPoly, parse_poly
from cherednik.dunkl import DunklContext, dunkl_difference
from cherednik.stability import (
    StabilityInstance,
    certify_mixed_kernel_generator,
    is_stably_in_kernel,
    stability_bound,
)


def inst(text):
    return StabilityInstance.from_text(text)


def test_bounds_from_formula():
    assert stability_bound(inst("x1^5*x2")) == 11  # (S,k,G) = (5,2,6)
    assert stability_bound(inst("x1^6")) == 11  # (6,1,6)
    assert stability_bound(inst("x1^2*x2^2*x3^2*x4^2")) == 12  # (2,4,8)
    assert inst("x1^5*x2").proof_text_bound == 10


def test_canonical_renaming():
    a = inst("x2^4*x5^4")
    assert a.k == 2 and a.G == 8 and a.S == 4
    assert a.terms == ((((4, 4)), (1,)),)


def test_zero_polynomial_is_stable():
    dom = CoeffDomain.generic(2)
    v = is_stably_in_kernel(ReducedPoly.zero(dom, 3))
    assert v.stable and v.per_n == []


def test_regime_guard():
    with pytest.raises(ValueError, match="experimental"):
        is_stably_in_kernel(inst("x1^2"), p=3)
    v = is_stably_in_kernel(inst("x1^2+x1*x2+x2^2"), p=3, t=1, experimental=True)
    assert not v.certifying


def test_rejected_monomial_with_witness():
    v = is_stably_in_kernel(inst("x1^5*x2"))
    assert not v.stable
    assert v.per_n[-1].n == 3  # first odd n already fails
    assert v.per_n[-1].witness is not None


def test_triple_application_residual_every_admissible_n():
    # the rejection certificate: (D_{y1-y2})^3 x1^5 x2 = c (x1 x2^2 + x2^3)
    for n in (3, 5, 7):
        ctx = DunklContext.make(n=n, p=2, t=1)
        f = parse_poly("x1^5*x2", n - 1, ctx.domain)
        for _ in range(3):
            f = dunkl_difference(f, 1, 2, ctx)
        assert f == parse_poly("(c)*x1*x2^2+(c)*x2^3", n - 1, ctx.domain)


def test_even_exponent_pair_family():
    v = is_stably_in_kernel(inst("x1^4*x2^4"), extra_above_bound=1)
    assert v.stable
    # the empirical check above the bound is included in the evidence
    assert v.per_n[-1].n > v.bound


def test_renaming_invariance():
    a = is_stably_in_kernel(inst("x1^4*x2^4"))
    b = is_stably_in_kernel(inst("x3^4*x1^4"))
    assert a.stable == b.stable
    assert [e.n for e in a.per_n] == [e.n for e in b.per_n]


def test_sixth_power_family():
    v = is_stably_in_kernel(inst("x1^6"))
    assert v.stable
    assert [e.n for e in v.per_n] == [3, 5, 7, 9, 11]


def test_consistency_two_n_above_bound():
    # empirical check of the criterion itself: membership persists past the
    # bound for a stably-true polynomial
    v = is_stably_in_kernel(inst("x1^6"), extra_above_bound=2)
    assert v.stable
    assert [e.n for e in v.per_n][-2:] == [13, 15]


def test_verdict_json_shape():
    v = is_stably_in_kernel(inst("x1^6"))
    d = v.to_json()
    assert set(d) >= {"polynomial", "bound", "per_n", "stable", "certifying"}
    assert all(set(e) >= {"n", "in_kernel"} for e in d["per_n"])


@pytest.mark.slow
def test_mixed_generator_certificate():
    rep = certify_mixed_kernel_generator()
    assert rep.identity_ok
    assert rep.generator.stable
    assert rep.x1_multiple.stable
    assert rep.auxiliary.stable
    assert rep.ok
