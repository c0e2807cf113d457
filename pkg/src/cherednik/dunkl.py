"""Dunkl operators on the reduced polynomial module.

D_{y_i} = t * d/dx_i - c * sum_{k != i} (x_i - x_k)^{-1} (1 - s_{ik})

acts on reduced representatives (no x_n appears, so the derivative in slot n
is zero and only the reflections s_{in} need the substitution).  Downstream
code uses the operator basis {D_{y_i - y_n} : i = 1..n-1}.

A specialized raw core handles characteristic 2 (both the fixed-c and the
generic-c cases) on bare term dicts; everything else goes through domain
scalar methods.  Both cores implement the same formulas.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .fields import CoeffDomain, PrimeField, RationalFunctionField
from .poly import Monomial, ReducedPoly, random_homogeneous
from .action import Transposition, _sum_power_int, apply_transposition

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DunklContext:
    """Parameters (n, t, domain) plus derived data for one engine run.

    Theorems about the quotient require n = 1 (mod p); the engine itself
    accepts any n >= 2 and merely records r = n mod p for reporting.
    """

    n: int
    t: int
    domain: CoeffDomain
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need n >= 2")
        if self.t not in (0, 1):
            raise ValueError("t must be 0 or 1")

    @property
    def nvars(self) -> int:
        return self.n - 1

    @property
    def p(self) -> int:
        return self.domain.p

    @property
    def r(self) -> int:
        return self.n % self.p

    @staticmethod
    def make(n: int, p: int, t: int, c: str | int = None) -> "DunklContext":
        """Build a context; c defaults to 1 for t=0 and 'generic' for t=1."""
        if c is None:
            c = 1 if t == 0 else "generic"
        if c == "generic":
            dom = CoeffDomain.generic(p)
        else:
            dom = CoeffDomain.prime(p, int(c))
        return DunklContext(n=n, t=t, domain=dom)


def _char2_mode(domain: CoeffDomain) -> str | None:
    """'value' / 'generic' when the fast xor core applies, else None."""
    if domain.p != 2:
        return None
    if isinstance(domain, PrimeField):
        return "value"
    if isinstance(domain, RationalFunctionField):
        return "generic"
    return None


# ---------------------------------------------------------------------------
# Characteristic-2 raw core: terms are dicts {exponent tuple: F_2[c] bitmask}
# (value mode uses bit 0 only; c-multiplication is then a no-op since c = 1).
# ---------------------------------------------------------------------------


def _xz_pairs(nv: int, e: int):
    """Expansion of x_n^e = (sum_{j<n} x_j)^e mod 2 as (monomial, 1) pairs."""
    return tuple((m, 1) for m, a in _sum_power_int(nv, e) if a % 2)


def _raw2_dunkl_z(terms: dict, i: int, n: int, t: int, c_shift: int) -> dict:
    """D_{y_i - y_n} on a char-2 raw term dict; c_shift is 1 for generic c.

    D_{y_i-y_n} = t d_i - c [ sum_{k != i, k <= n} delta_{ik}
                              + sum_{k < n} delta_{kn} ]   (signs vanish mod 2)
    """
    nv = n - 1
    out: dict[Monomial, int] = {}

    def bump(m, v):
        w = out.get(m, 0) ^ v
        if w:
            out[m] = w
        else:
            del out[m]

    for m, v in terms.items():
        if t == 1 and m[i - 1] & 1:
            mm = list(m)
            mm[i - 1] -= 1
            bump(tuple(mm), v)
        vc = v << c_shift
        # pair differences delta_{ik}, k < n
        a = m[i - 1]
        for k in range(1, n):
            if k == i:
                continue
            b = m[k - 1]
            if a == b:
                continue
            lo, hi = (b, a) if a > b else (a, b)
            tot = a + b - 1
            mm = list(m)
            for s in range(lo, hi):
                mm[i - 1] = s
                mm[k - 1] = tot - s
                bump(tuple(mm), vc)
            mm[i - 1] = a
            mm[k - 1] = b
        # substitution differences delta_{kn} for all k < n, plus delta_{in}
        for k in range(1, n):
            e = m[k - 1]
            mult = 2 if k == i else 1  # delta_{in} appears in both sums
            if mult == 2:
                continue  # 2 * anything = 0 mod 2
            if e == 0:
                continue
            base = list(m)
            for s in range(e):
                base[k - 1] = s
                for xm, _one in _xz_pairs(nv, e - 1 - s):
                    mm = tuple(bb + xx for bb, xx in zip(base, xm))
                    bump(mm, vc)
            base[k - 1] = e
    return out


def _general_dunkl_z(fpoly: ReducedPoly, i: int, ctx: DunklContext) -> ReducedPoly:
    """D_{y_i - y_n} via domain scalar ops (any characteristic)."""
    dom = ctx.domain
    n = ctx.n
    nv = ctx.nvars
    out: dict[Monomial, object] = {}

    def bump(m, v):
        if m in out:
            s = dom.add(out[m], v)
            if dom.is_zero(s):
                del out[m]
            else:
                out[m] = s
        elif not dom.is_zero(v):
            out[m] = v

    c_val = dom.c_scalar()
    neg_c = dom.neg(c_val)
    for m, v in fpoly.terms.items():
        if ctx.t == 1:
            e = m[i - 1]
            if e % dom.p:
                mm = list(m)
                mm[i - 1] -= 1
                bump(tuple(mm), dom.mul(v, dom.from_int(e)))
        vc = dom.mul(v, neg_c)
        neg_vc = dom.neg(vc)
        a = m[i - 1]
        # delta_{ik} for k < n, k != i
        for k in range(1, n):
            if k == i:
                continue
            b = m[k - 1]
            if a == b:
                continue
            sgn_v = vc if a > b else neg_vc
            lo, hi = (b, a) if a > b else (a, b)
            tot = a + b - 1
            mm = list(m)
            for s in range(lo, hi):
                mm[i - 1] = s
                mm[k - 1] = tot - s
                bump(tuple(mm), sgn_v)
            mm[i - 1] = a
            mm[k - 1] = b
        # delta_{kn} for k < n (with delta_{in} counted twice: once from
        # sum_{k != i} delta_{ik}, once from the D_{y_n} part)
        for k in range(1, n):
            e = m[k - 1]
            if e == 0:
                continue
            mult = dom.from_int(2) if k == i else dom.one
            if dom.is_zero(mult):
                continue
            w = dom.mul(vc, mult)
            base = list(m)
            base[k - 1] = 0
            rest = tuple(base)
            for s in range(e):
                u = e - 1 - s
                sign = dom.one if u % 2 == 0 else dom.neg(dom.one)
                ws = dom.mul(w, sign)
                for xm, mult_int in _sum_power_int(nv, u):
                    coef = dom.mul(ws, dom.from_int(mult_int))
                    if dom.is_zero(coef):
                        continue
                    mm = list(xm)
                    mm[k - 1] += s
                    mm = tuple(r + x for r, x in zip(rest, mm))
                    bump(mm, coef)
    return ReducedPoly(dom, nv, out)


def _char2_unwrap(f: ReducedPoly, mode: str) -> dict:
    """Strip generic-mode fraction tags down to bare F_2[c] bitmasks."""
    if mode == "generic":
        one = f.domain.ring.one
        out = {}
        for m, v in f.terms.items():
            if v[1] != one:
                raise ValueError("char-2 fast path needs polynomial coefficients")
            out[m] = v[0]
        return out
    return f.terms


def dunkl_z(f: ReducedPoly, i: int, ctx: DunklContext) -> ReducedPoly:
    """The workhorse operator D_{y_i - y_n}, i in 1..n-1."""
    if not 1 <= i <= ctx.nvars:
        raise ValueError(f"operator index {i} out of 1..{ctx.nvars}")
    mode = _char2_mode(ctx.domain)
    if mode is not None:
        try:
            raw = _char2_unwrap(f, mode)
        except ValueError:
            return _general_dunkl_z(f, i, ctx)
        out = _raw2_dunkl_z(raw, i, ctx.n, ctx.t, 1 if mode == "generic" else 0)
        if mode == "generic":
            one = ctx.domain.ring.one
            return ReducedPoly(
                ctx.domain, ctx.nvars, {m: (v, one) for m, v in out.items()}
            )
        return ReducedPoly(ctx.domain, ctx.nvars, out)
    return _general_dunkl_z(f, i, ctx)


def dunkl(f: ReducedPoly, i: int, ctx: DunklContext) -> ReducedPoly:
    """The single Dunkl operator D_{y_i}, i in 1..n (n allowed).

    On reduced representatives the derivative never touches slot n, and
    D_{y_n} consists solely of the reflection sums through the substitution.
    """
    if not 1 <= i <= ctx.n:
        raise ValueError(f"index {i} out of 1..{ctx.n}")
    dom = ctx.domain
    n = ctx.n
    nv = ctx.nvars
    from .action import divided_difference

    out = ReducedPoly.zero(dom, nv)
    if ctx.t == 1 and i < n:
        dterms = {}
        for m, v in f.terms.items():
            e = m[i - 1]
            coef = dom.mul(v, dom.from_int(e))
            if e and not dom.is_zero(coef):
                mm = list(m)
                mm[i - 1] -= 1
                dterms[tuple(mm)] = coef
        out = out.add(ReducedPoly(dom, nv, dterms))
    acc = ReducedPoly.zero(dom, nv)
    for k in range(1, n + 1):
        if k == i:
            continue
        acc = acc.add(divided_difference(f, i, k, n))
    return out.sub(acc.scalar_mul(dom.c_scalar()))


def dunkl_difference(f: ReducedPoly, i: int, j: int, ctx: DunklContext) -> ReducedPoly:
    """D_{y_i - y_j} = D_{y_i} - D_{y_j}; i = j gives 0 (flagged in the log)."""
    if i == j:
        log.debug("dunkl_difference called with i == j == %d; returning 0", i)
        return ReducedPoly.zero(ctx.domain, ctx.nvars)
    if j == ctx.n:
        return dunkl_z(f, i, ctx)
    if i == ctx.n:
        return dunkl_z(f, j, ctx).neg()
    return dunkl_z(f, i, ctx).sub(dunkl_z(f, j, ctx))


def dunkl_parts(f: ReducedPoly, i: int, j: int, ctx: DunklContext):
    """Split D_{y_i-y_j} f = alpha + c * beta (t = 1 only).

    alpha is the plain derivative part (d_i - d_j) f; beta collects the
    divided-difference sums, so the identity holds as polynomials in c.
    """
    if ctx.t != 1:
        raise ValueError("the alpha/beta decomposition requires a t=1 context")
    from .action import divided_difference

    dom = ctx.domain
    nv = ctx.nvars
    alpha = ReducedPoly.zero(dom, nv)
    for idx, sign in ((i, 1), (j, -1)):
        if idx == ctx.n:
            continue  # derivative in slot n is zero on reduced representatives
        dterms = {}
        for m, v in f.terms.items():
            e = m[idx - 1]
            coef = dom.mul(v, dom.from_int(sign * e))
            if e and not dom.is_zero(coef):
                mm = list(m)
                mm[idx - 1] -= 1
                dterms[tuple(mm)] = coef
        alpha = alpha.add(ReducedPoly(dom, nv, dterms))
    beta = ReducedPoly.zero(dom, nv)
    for k in range(1, ctx.n + 1):
        if k != i:
            beta = beta.sub(divided_difference(f, i, k, ctx.n))
        if k != j:
            beta = beta.add(divided_difference(f, j, k, ctx.n))
    return alpha, beta


# ---------------------------------------------------------------------------
# Commutator self-test: the defining relations as operator identities
# ---------------------------------------------------------------------------


@dataclass
class CommutatorFailure:
    i: int
    j: int
    a: int
    f: ReducedPoly
    lhs: ReducedPoly
    rhs: ReducedPoly


@dataclass
class CommutatorReport:
    checked: int
    failures: list[CommutatorFailure]

    @property
    def ok(self) -> bool:
        return not self.failures


def _reduced_variable(ctx: DunklContext, a: int) -> ReducedPoly:
    """x_a as a reduced polynomial; a = n expands to -(x_1+...+x_{n-1})."""
    from .action import neg_sum_power

    if a < ctx.n:
        return ReducedPoly.variable(ctx.domain, ctx.nvars, a)
    return neg_sum_power(ctx.domain, ctx.nvars, 1)


def commutator_rhs(
    f: ReducedPoly, i: int, j: int, a: int, ctx: DunklContext
) -> ReducedPoly:
    """[D_{y_i - y_j}, x_a] f per the defining relations of the algebra."""
    dom = ctx.domain
    n = ctx.n
    c = dom.c_scalar()

    def refl(b, k):
        return apply_transposition(f, Transposition(b, k), n)

    if a == i:
        out = f.scalar_mul(dom.from_int(ctx.t))
        out = out.sub(refl(i, j).scalar_mul(c))
        for k in range(1, n + 1):
            if k != i:
                out = out.sub(refl(i, k).scalar_mul(c))
        return out
    if a == j:
        out = f.scalar_mul(dom.from_int(ctx.t)).neg()
        out = out.add(refl(i, j).scalar_mul(c))
        for k in range(1, n + 1):
            if k != j:
                out = out.add(refl(j, k).scalar_mul(c))
        return out
    return refl(i, a).scalar_mul(c).sub(refl(j, a).scalar_mul(c))


def check_commutators(
    ctx: DunklContext,
    degree: int,
    trials: int,
    seed: int = 0,
    dunkl_difference_fn=None,
) -> CommutatorReport:
    """Verify [D_{y_i-y_j}, x_a] on random homogeneous polynomials.

    Every (i, j, a) triple with i < j <= n, a <= n is exercised for each
    random polynomial; counts in the report are individual identities.
    """
    import random as _random

    dd = dunkl_difference_fn or dunkl_difference
    rng = _random.Random(seed)
    checked = 0
    failures: list[CommutatorFailure] = []
    for _ in range(trials):
        d = rng.randint(0, degree)
        f = random_homogeneous(ctx.domain, ctx.nvars, d, rng)
        for i in range(1, ctx.n + 1):
            for j in range(i + 1, ctx.n + 1):
                for a in range(1, ctx.n + 1):
                    xa = _reduced_variable(ctx, a)
                    lhs = dd(xa.mul(f), i, j, ctx).sub(xa.mul(dd(f, i, j, ctx)))
                    rhs = commutator_rhs(f, i, j, a, ctx)
                    checked += 1
                    if lhs != rhs:
                        failures.append(CommutatorFailure(i, j, a, f, lhs, rhs))
                        if len(failures) >= 3:
                            return CommutatorReport(checked, failures)
    return CommutatorReport(checked, failures)
