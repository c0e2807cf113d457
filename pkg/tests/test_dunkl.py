import random

import pytest
from hypothesis import given, settings, strategies as st

from cherednik.fields import CoeffDomain
from cherednik.poly import ReducedPoly, format_poly, parse_poly, random_homogeneous
from cherednik.dunkl import (
    DunklContext,
    check_commutators,
    dunkl,
    dunkl_difference,
    dunkl_parts,
    dunkl_z,
)


def ctx_of(n, p, t, c=None):
    return DunklContext.make(n=n, p=p, t=t, c=c)


def test_t0_difference_on_variable():
    ctx = ctx_of(5, 2, 0)
    f = parse_poly("x1", 4, ctx.domain)
    assert dunkl_difference(f, 1, 2, ctx) == parse_poly("1", 4, ctx.domain)


def test_t0_difference_on_product():
    ctx = ctx_of(5, 2, 0)
    f = parse_poly("x1*x2", 4, ctx.domain)
    assert dunkl_difference(f, 1, 2, ctx) == parse_poly("x1+x2", 4, ctx.domain)


def test_t1_generic_hand_value():
    ctx = ctx_of(3, 2, 1)
    f = parse_poly("x1", 2, ctx.domain)
    assert format_poly(dunkl_difference(f, 1, 2, ctx)) == "(c+1)"


def test_singular_quadratic_p2():
    ctx = ctx_of(5, 2, 0)
    f = parse_poly("x1^2+x1*x2+x2^2", 4, ctx.domain)
    for i in range(1, 5):
        assert dunkl_z(f, i, ctx).is_zero()


def test_singular_skew_p3():
    ctx = ctx_of(4, 3, 0)
    f = parse_poly("x2-x3", 3, ctx.domain).mul(parse_poly("x1-x2-x3", 3, ctx.domain))
    for i in range(1, 4):
        for j in range(1, 5):
            if i != j:
                assert dunkl_difference(f, i, j, ctx).is_zero()


def test_triple_application_residual():
    ctx = ctx_of(5, 2, 1)
    f = parse_poly("x1^5*x2", 4, ctx.domain)
    for _ in range(3):
        f = dunkl_difference(f, 1, 2, ctx)
    assert f == parse_poly("(c)*x1*x2^2+(c)*x2^3", 4, ctx.domain)


def test_same_index_difference_is_zero():
    ctx = ctx_of(4, 3, 0)
    f = parse_poly("x1^2", 3, ctx.domain)
    assert dunkl_difference(f, 2, 2, ctx).is_zero()


def test_difference_matches_single_dunkls():
    rng = random.Random(5)
    for p, t, n in [(2, 0, 4), (3, 0, 4), (2, 1, 3), (3, 1, 4)]:
        ctx = ctx_of(n, p, t)
        for _ in range(5):
            f = random_homogeneous(ctx.domain, n - 1, rng.randint(1, 3), rng)
            for i in range(1, n):
                for j in range(1, n + 1):
                    if i == j:
                        continue
                    assert dunkl_difference(f, i, j, ctx) == dunkl(f, i, ctx).sub(
                        dunkl(f, j, ctx)
                    )


def test_char2_core_matches_general_core():
    from cherednik.dunkl import _general_dunkl_z

    rng = random.Random(9)
    for t in (0, 1):
        ctx = ctx_of(5, 2, t, c="generic" if t else None)
        for _ in range(10):
            f = random_homogeneous(ctx.domain, 4, rng.randint(1, 4), rng)
            for i in range(1, 5):
                assert dunkl_z(f, i, ctx) == _general_dunkl_z(f, i, ctx)


@settings(max_examples=120, deadline=None)
@given(seed=st.integers(0, 10**9))
def test_degree_lowering(seed):
    rng = random.Random(seed)
    p, t, n = rng.choice([(2, 0, 4), (3, 0, 4), (2, 1, 5), (3, 1, 4)])
    ctx = ctx_of(n, p, t)
    d = rng.randint(1, 4)
    f = random_homogeneous(ctx.domain, n - 1, d, rng)
    g = dunkl_z(f, rng.randint(1, n - 1), ctx)
    if not g.is_zero():
        assert g.degree() == d - 1


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**9))
def test_dunkl_operators_commute(seed):
    rng = random.Random(seed)
    p, t, n = rng.choice([(2, 0, 4), (3, 0, 4), (2, 1, 4), (3, 1, 4)])
    ctx = ctx_of(n, p, t)
    f = random_homogeneous(ctx.domain, n - 1, rng.randint(2, 4), rng)
    i = rng.randint(1, n - 1)
    j = rng.randint(1, n - 1)
    a = dunkl_z(dunkl_z(f, i, ctx), j, ctx)
    b = dunkl_z(dunkl_z(f, j, ctx), i, ctx)
    assert a == b


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**9))
def test_linearity(seed):
    rng = random.Random(seed)
    ctx = ctx_of(4, 3, 1)
    d = rng.randint(1, 4)
    f = random_homogeneous(ctx.domain, 3, d, rng)
    g = random_homogeneous(ctx.domain, 3, d, rng)
    i = rng.randint(1, 3)
    assert dunkl_z(f.add(g), i, ctx) == dunkl_z(f, i, ctx).add(dunkl_z(g, i, ctx))


def test_dunkl_parts_examples():
    ctx = ctx_of(3, 2, 1)
    f = parse_poly("x1^2", 2, ctx.domain)
    alpha, beta = dunkl_parts(f, 1, 2, ctx)
    assert alpha.is_zero()  # derivative 2 x1 = 0 at p = 2
    ctx3 = ctx_of(4, 3, 1)
    g = parse_poly("x1^2", 3, ctx3.domain)
    alpha3, _ = dunkl_parts(g, 1, 2, ctx3)
    assert alpha3 == parse_poly("2*x1", 3, ctx3.domain)
    const = ReducedPoly.constant(ctx.domain, 2, 1)
    a0, b0 = dunkl_parts(const, 1, 2, ctx)
    assert a0.is_zero() and b0.is_zero()


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 10**9))
def test_parts_identity(seed):
    # D_{y_i - y_j} f == alpha + c * beta as polynomials in c
    rng = random.Random(seed)
    p = rng.choice([2, 3])
    n = rng.randint(3, 5)
    ctx = ctx_of(n, p, 1)
    f = random_homogeneous(ctx.domain, n - 1, rng.randint(1, 4), rng)
    i = rng.randint(1, n)
    j = rng.randint(1, n)
    if i == j:
        return
    alpha, beta = dunkl_parts(f, i, j, ctx)
    c = ctx.domain.c_scalar()
    assert dunkl_difference(f, i, j, ctx) == alpha.add(beta.scalar_mul(c))


def test_parts_rejects_t0():
    ctx = ctx_of(4, 3, 0)
    f = parse_poly("x1", 3, ctx.domain)
    with pytest.raises(ValueError):
        dunkl_parts(f, 1, 2, ctx)


@pytest.mark.parametrize("p,t,n", [(2, 0, 3), (3, 1, 4)])
def test_commutators_pass(p, t, n):
    ctx = ctx_of(n, p, t)
    report = check_commutators(ctx, degree=3, trials=12, seed=3)
    assert report.ok and report.checked >= 100


def test_commutators_catch_corruption():
    # dropping one reflection term from the operator must break the relations
    ctx = ctx_of(3, 2, 0)

    def corrupted(f, i, j, ctx_):
        from cherednik.action import divided_difference

        dom = ctx_.domain
        out = ReducedPoly.zero(dom, ctx_.nvars)
        for k in range(1, ctx_.n + 1):
            if k != i and k != ctx_.n:  # drop the k = n term of the i-sum
                out = out.sub(divided_difference(f, i, k, ctx_.n))
            if k != j:
                out = out.add(divided_difference(f, j, k, ctx_.n))
        return out.scalar_mul(dom.c_scalar())

    report = check_commutators(
        ctx, degree=2, trials=4, seed=1, dunkl_difference_fn=corrupted
    )
    assert not report.ok
    assert report.failures[0].lhs != report.failures[0].rhs
