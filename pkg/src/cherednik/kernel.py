"""The contravariant form, its graded kernel, and membership certificates.

The pairing of a y-side monomial (y_{i_1}-y_n)^{a_1} ... (y_{n-1}-y_n)^{a_{n-1}}
against an x-side polynomial q is the constant term of the iterated Dunkl
image D^a q.  Degree by degree,

    ker B[d] = { f : D_{y_i - y_n} f  lies in  ker B[d-1]  for every i },

which turns each graded piece into a plain matrix kernel: stack the Dunkl
matrices composed with the previous degree's quotient coordinates and reduce.
A full Gram-matrix construction is kept as an independent oracle.

Membership of a single polynomial is decided without any matrices by walking
the tree of iterated Dunkl images, pruning zero branches, deduplicating
commuting operator products (multisets), and quotienting by the stabilizer
of the polynomial among slot permutations.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .fields import CoeffDomain, RationalFunctionField, Scalar
from .poly import Monomial, ReducedPoly, monomial_index, monomials_of_degree
from .action import Transposition, apply_transposition, reduce_last
from .dunkl import DunklContext, dunkl_z
from . import linalg


class IncompleteKernelError(RuntimeError):
    """Raised when a result needs a completed kernel; carries partial dims."""

    def __init__(self, message, partial_dims):
        super().__init__(message)
        self.partial_dims = partial_dims


class ResourceLimitError(RuntimeError):
    pass


class BudgetExceeded(RuntimeError):
    """Wall-clock budget for a kernel run was exhausted."""


# ---------------------------------------------------------------------------
# Graded kernel engine
# ---------------------------------------------------------------------------


@dataclass
class DegreeData:
    degree: int
    dim_m: int
    kernel_rows: list[dict[int, object]]
    kernel_pivots: list[int]
    dim_l: int
    constraint_rows: list[list] = field(repr=False, default_factory=list)

    @property
    def dim_kernel(self) -> int:
        return len(self.kernel_rows)


class GradedKernel:
    """Per-degree reduced bases of ker B plus quotient data for the quotient."""

    def __init__(self, ctx: DunklContext):
        self.ctx = ctx
        self.adapter = linalg.adapter_for(ctx.domain)
        self.completed = False
        self.first_zero_degree: int | None = None
        zero_data = DegreeData(
            degree=0,
            dim_m=1,
            kernel_rows=[],
            kernel_pivots=[],
            dim_l=1,
            constraint_rows=[[self.adapter.one]],
        )
        self.degrees: dict[int, DegreeData] = {0: zero_data}

    # -- core computation -----------------------------------------------------

    def _dunkl_columns(self, d: int, i: int) -> list[dict[int, object]]:
        ctx = self.ctx
        dom = ctx.domain
        nv = ctx.nvars
        monos = monomials_of_degree(nv, d)
        idx_prev = monomial_index(nv, d - 1)
        one = dom.one
        generic = isinstance(dom, RationalFunctionField)
        ring_one = dom.ring.one if generic else None
        cols = []
        for m in monos:
            g = dunkl_z(ReducedPoly(dom, nv, {m: one}), i, ctx)
            col = {}
            for mm, v in g.terms.items():
                if generic:
                    if v[1] != ring_one:
                        raise AssertionError("Dunkl image must be polynomial in c")
                    col[idx_prev[mm]] = v[0]
                else:
                    col[idx_prev[mm]] = v
            cols.append(col)
        return cols

    def compute_degree(self, d: int) -> DegreeData:
        if d in self.degrees:
            return self.degrees[d]
        if d - 1 not in self.degrees:
            self.compute_degree(d - 1)
        ctx = self.ctx
        dom = ctx.domain
        nv = ctx.nvars
        adapter = self.adapter
        prev = self.degrees[d - 1]
        monos = monomials_of_degree(nv, d)
        ncols = len(monos)
        if prev.dim_l == 0:
            kernel_rows, kernel_pivots = linalg.identity_kernel(dom, ncols)
            data = DegreeData(d, ncols, kernel_rows, kernel_pivots, 0, [])
            self.degrees[d] = data
            return data
        stacked: list[list] = []
        for i in range(1, nv + 1):
            cols_i = self._dunkl_columns(d, i)
            stacked.extend(
                linalg.compose_rows_columns(adapter, prev.constraint_rows, cols_i)
            )
        ech_rows, ech_pivots = linalg.echelon(adapter, stacked)
        rref = linalg.rref_scalar_rows(adapter, ech_rows, ech_pivots)
        kernel_rows, kernel_pivots = linalg.kernel_from_rref(
            dom, rref, ech_pivots, ncols
        )
        dim_l = len(ech_pivots)
        if dim_l + len(kernel_rows) != ncols:
            raise AssertionError("rank accounting failed")
        constraint_rows = []
        for srow in rref:
            cleared = adapter.clear_denominators(srow)
            dense = [adapter.zero] * ncols
            for col, v in cleared.items():
                dense[col] = v
            constraint_rows.append(adapter.strip_row(dense))
        data = DegreeData(d, ncols, kernel_rows, kernel_pivots, dim_l, constraint_rows)
        self.degrees[d] = data
        return data

    # -- views ------------------------------------------------------------------

    def dims(self) -> dict[int, tuple[int, int, int]]:
        """degree -> (dim M, dim ker, dim L) for every computed degree."""
        return {
            d: (dd.dim_m, dd.dim_kernel, dd.dim_l)
            for d, dd in sorted(self.degrees.items())
        }

    def basis_polys(self, d: int) -> list[ReducedPoly]:
        dd = self.degrees[d]
        monos = monomials_of_degree(self.ctx.nvars, d)
        dom = self.ctx.domain
        return [
            ReducedPoly(dom, self.ctx.nvars, {monos[c]: v for c, v in row.items()})
            for row in dd.kernel_rows
        ]

    def pivot_monomials(self, d: int) -> list[Monomial]:
        dd = self.degrees[d]
        monos = monomials_of_degree(self.ctx.nvars, d)
        return [monos[c] for c in dd.kernel_pivots]

    def reduce_poly(self, f: ReducedPoly, d: int) -> ReducedPoly:
        """Normal form of a degree-d polynomial modulo ker B[d]."""
        dd = self.degrees[d]
        idx = monomial_index(self.ctx.nvars, d)
        monos = monomials_of_degree(self.ctx.nvars, d)
        vec = {idx[m]: v for m, v in f.terms.items()}
        red = linalg.reduce_by_rref(
            self.ctx.domain, vec, dd.kernel_rows, dd.kernel_pivots
        )
        return ReducedPoly(
            self.ctx.domain, self.ctx.nvars, {monos[c]: v for c, v in red.items()}
        )

    def contains(self, f: ReducedPoly) -> bool:
        d = f.degree()
        if d is None:
            return True
        if d not in self.degrees:
            self.compute_degree(d)
        return self.reduce_poly(f, d).is_zero()

    # -- consistency checks -------------------------------------------------------

    def check_ideal_property(self, d: int) -> bool:
        """x_i * ker B[d] lies inside span(ker B[d+1])."""
        if d + 1 not in self.degrees:
            self.compute_degree(d + 1)
        for poly in self.basis_polys(d):
            for i in range(1, self.ctx.nvars + 1):
                shifted = poly.monomial_mul(
                    tuple(1 if k == i - 1 else 0 for k in range(self.ctx.nvars))
                )
                if not self.reduce_poly(shifted, d + 1).is_zero():
                    return False
        return True

    def check_sn_invariance(self, d: int, pairs) -> bool:
        """sigma_{ab} ker B[d] = ker B[d] for the given index pairs."""
        for a, b in pairs:
            for poly in self.basis_polys(d):
                moved = apply_transposition(poly, Transposition(a, b), self.ctx.n)
                if not self.reduce_poly(moved, d).is_zero():
                    return False
        return True


def kernel_at_degree(d: int, prior: GradedKernel, ctx: DunklContext):
    """Basis of ker B[d] via the recursive adjointness method."""
    if prior.ctx is not ctx and prior.ctx != ctx:
        raise ValueError("prior kernel was computed for a different context")
    if d < 1:
        raise ValueError("kernel degrees start at 1; ker B[0] = {0}")
    prior.compute_degree(d)
    return prior.basis_polys(d)


def default_degree_cap(n: int, p: int, t: int) -> int:
    """Provable support bound: the quotient sits inside the baby Verma
    module, whose series ends at (p for t=1) * (2+3+...+n) - (n-1)."""
    step = p if t == 1 else 1
    top = step * (n * (n + 1) // 2 - 1) - (n - 1)
    return max(n + 10, top + 3)


def compute_graded_kernel(
    ctx: DunklContext,
    max_degree: int | None = None,
    budget_seconds: float | None = None,
    verify_extra: int = 2,
) -> GradedKernel:
    """Run the engine until the quotient dimension hits zero (plus checks).

    Stops at the first degree with dim L = 0, then verifies `verify_extra`
    further degrees are also zero.  The default hard cap is the baby-Verma
    support bound (never below n + 10), past which dim L provably vanishes.
    """
    cap = (
        max_degree
        if max_degree is not None
        else default_degree_cap(ctx.n, ctx.p, ctx.t)
    )
    gk = GradedKernel(ctx)
    start = time.monotonic()
    d = 1
    while d <= cap:
        if budget_seconds is not None and time.monotonic() - start > budget_seconds:
            raise BudgetExceeded(f"kernel run exceeded {budget_seconds}s at degree {d}")
        data = gk.compute_degree(d)
        if data.dim_l == 0:
            gk.first_zero_degree = d
            for extra in range(1, verify_extra + 1):
                more = gk.compute_degree(d + extra)
                if more.dim_l != 0:
                    raise AssertionError(
                        f"dim L became nonzero again at degree {d + extra}"
                    )
            gk.completed = True
            break
        d += 1
    return gk


# ---------------------------------------------------------------------------
# Contravariant pairing and the Gram-matrix oracle
# ---------------------------------------------------------------------------


def contravariant_pairing(a: tuple[int, ...], f: ReducedPoly, ctx: DunklContext) -> Scalar:
    """B(y^a, f): apply D_{y_i - y_n} a_i times, take the constant term."""
    if len(a) != ctx.nvars:
        raise ValueError("exponent vector length must be n-1")
    if sum(a) != (f.degree() or 0):
        raise ValueError("pairing needs matching degrees")
    g = f
    for i, e in enumerate(a, start=1):
        for _ in range(e):
            g = dunkl_z(g, i, ctx)
    return Scalar(ctx.domain, g.constant_term())


def _multiset_children(a: tuple[int, ...], nv: int):
    """Children a + e_j for j at or after the last nonzero slot (1-based)."""
    last = 0
    for j in range(nv, 0, -1):
        if a[j - 1]:
            last = j
            break
    for j in range(max(last, 1), nv + 1):
        yield j, a[: j - 1] + (a[j - 1] + 1,) + a[j:]


def _gram_column(m: Monomial, d: int, ctx: DunklContext):
    """All pairings B(a, x^m) for |a| = d, via a zero-pruned multiset tree."""
    dom = ctx.domain
    nv = ctx.nvars
    level = {(0,) * nv: ReducedPoly(dom, nv, {m: dom.one})}
    for _ in range(d):
        nxt: dict[tuple[int, ...], ReducedPoly] = {}
        for a, g in level.items():
            for j, child in _multiset_children(a, nv):
                if child in nxt:
                    continue
                img = dunkl_z(g, j, ctx)
                if not img.is_zero():
                    nxt[child] = img
        level = nxt
    return {a: g.constant_term() for a, g in level.items()}


def gram_oracle_kernel(
    d: int, ctx: DunklContext, max_pairings: int = 2_000_000
):
    """Kernel of the full Gram matrix at degree d (independent oracle).

    Returns (kernel rows, pivot columns) in the same canonical RREF form as
    the recursive engine, so results are directly comparable.
    """
    dom = ctx.domain
    nv = ctx.nvars
    monos = monomials_of_degree(nv, d)
    n_monos = len(monos)
    if d == 0:
        return [], []
    if n_monos * n_monos > max_pairings:
        raise ResourceLimitError(
            f"Gram matrix would need {n_monos * n_monos} pairings; "
            "use the recursive kernel engine instead"
        )
    adapter = linalg.adapter_for(dom)
    generic = isinstance(dom, RationalFunctionField)
    ring_one = dom.ring.one if generic else None
    rows_order = monomials_of_degree(nv, d)  # y-multisets, same ordering
    matrix = [[adapter.zero] * n_monos for _ in rows_order]
    row_idx = {a: r for r, a in enumerate(rows_order)}
    for j, m in enumerate(monos):
        for a, val in _gram_column(m, d, ctx).items():
            if generic:
                if val[1] != ring_one:
                    raise AssertionError("pairing value must be polynomial in c")
                raw = val[0]
            else:
                raw = val
            if not adapter.is_zero(raw):
                matrix[row_idx[a]][j] = raw
    ech_rows, ech_pivots = linalg.echelon(adapter, matrix)
    rref = linalg.rref_scalar_rows(adapter, ech_rows, ech_pivots)
    return linalg.kernel_from_rref(dom, rref, ech_pivots, n_monos)


# ---------------------------------------------------------------------------
# Membership and singularity of a single polynomial
# ---------------------------------------------------------------------------


@dataclass
class Membership:
    member: bool
    witness: tuple[int, ...] | None = None
    witness_value: Scalar | None = None
    method: str = "direct"

    def __bool__(self):
        return self.member


def slot_symmetry_classes(f: ReducedPoly, ctx: DunklContext) -> list[list[int]]:
    """Group operator slots 1..n-1 into classes interchangeable on f."""
    nv = ctx.nvars
    parent = list(range(nv + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    support = [i for i in range(1, nv + 1) if any(m[i - 1] for m in f.terms)]
    spare = [i for i in range(1, nv + 1) if i not in support]
    for k in range(len(spare) - 1):
        parent[find(spare[k + 1])] = find(spare[k])
    for ai in range(len(support)):
        for bi in range(ai + 1, len(support)):
            a, b = support[ai], support[bi]
            if find(a) == find(b):
                continue
            swapped = apply_transposition(f, Transposition(a, b), ctx.n)
            if swapped == f:
                parent[find(b)] = find(a)
    classes: dict[int, list[int]] = {}
    for i in range(1, nv + 1):
        classes.setdefault(find(i), []).append(i)
    return sorted(classes.values())


def _canonical(a: tuple[int, ...], classes: list[list[int]]) -> bool:
    for cls in classes:
        prev = None
        for i in cls:
            cur = a[i - 1]
            if prev is not None and cur > prev:
                return False
            prev = cur
    return True


def _canonical_children(a: tuple[int, ...], nv: int, classes):
    last = 0
    for j in range(nv, 0, -1):
        if a[j - 1]:
            last = j
            break
    for j in range(max(last, 1), nv + 1):
        child = a[: j - 1] + (a[j - 1] + 1,) + a[j:]
        if _canonical(child, classes):
            yield j, child


def _tree_search(start_polys, apply_op, nv, depth, classes, is_zero):
    """Walk canonical multisets to the given depth; yield the final level."""
    level = start_polys
    for _ in range(depth):
        nxt = {}
        for a, g in level.items():
            for j, child in _canonical_children(a, nv, classes):
                if child in nxt:
                    continue
                img = apply_op(g, j)
                if not is_zero(img):
                    nxt[child] = img
        level = nxt
        if not level:
            break
    return level


def _upstairs_lift(f: ReducedPoly) -> dict:
    """Raw n-slot term dict of the reduced representative (x_n absent)."""
    dom = f.domain
    one = dom.ring.one
    out = {}
    for m, v in f.terms.items():
        if v[1] != one:
            raise ValueError("membership fast path needs polynomial coefficients")
        out[m + (0,)] = v[0]
    return out


def _raw2_dunkl_z_upstairs(terms: dict, i: int, n: int, t: int, c_shift: int) -> dict:
    """D_{y_i - y_n} on unreduced char-2 term dicts over n slots.

    D_{y_i-y_n} = t (d_i - d_n) - c [ sum_{k != i} delta_{ik}
                                      + sum_{k < n} delta_{kn} ]  (mod 2)
    with every divided difference a plain two-slot geometric sum.
    """
    out: dict[Monomial, int] = {}

    def bump(m, v):
        w = out.get(m, 0) ^ v
        if w:
            out[m] = w
        else:
            del out[m]

    def pair(m, v, u, w_):
        a, b = m[u - 1], m[w_ - 1]
        if a == b:
            return
        lo, hi = (b, a) if a > b else (a, b)
        tot = a + b - 1
        mm = list(m)
        for s in range(lo, hi):
            mm[u - 1] = s
            mm[w_ - 1] = tot - s
            bump(tuple(mm), v)
        mm[u - 1] = a
        mm[w_ - 1] = b

    for m, v in terms.items():
        if t == 1:
            if m[i - 1] & 1:
                mm = list(m)
                mm[i - 1] -= 1
                bump(tuple(mm), v)
            if m[n - 1] & 1:
                mm = list(m)
                mm[n - 1] -= 1
                bump(tuple(mm), v)
        vc = v << c_shift
        # delta_{in} enters both sums, so its 2x contribution is 0 mod 2
        for k in range(1, n):
            if k == i:
                continue
            pair(m, vc, i, k)
            pair(m, vc, k, n)
    return out


def _upstairs_reduce(terms: dict, ctx: DunklContext) -> ReducedPoly:
    dom = ctx.domain
    one = dom.ring.one
    poly = ReducedPoly(dom, ctx.n, {m: (v, one) for m, v in terms.items()})
    return reduce_last(poly)


def is_in_kernel(f: ReducedPoly, ctx: DunklContext, method: str | None = None) -> Membership:
    """Decide f in ker B, with a nonzero-pairing witness on failure."""
    if f.is_zero():
        return Membership(True, method="trivial")
    d = f.degree()
    if d is None or not f.is_homogeneous():
        raise ValueError("membership test needs a homogeneous polynomial")
    if method is None:
        fast_ok = (
            ctx.p == 2
            and ctx.t == 1
            and isinstance(ctx.domain, RationalFunctionField)
            and ctx.n % 2 == 1
            and d > 4
            and ctx.n >= 7
        )
        method = "cutoff" if fast_ok else "direct"
    classes = slot_symmetry_classes(f, ctx)
    nv = ctx.nvars
    if method == "direct":
        start = {(0,) * nv: f}
        leaves = _tree_search(
            start,
            lambda g, j: dunkl_z(g, j, ctx),
            nv,
            d,
            classes,
            lambda g: g.is_zero(),
        )
        for a in sorted(leaves):
            val = leaves[a].constant_term()
            if not ctx.domain.is_zero(val):
                return Membership(False, a, Scalar(ctx.domain, val), "direct")
        return Membership(True, method="direct")
    if method != "cutoff":
        raise ValueError(f"unknown membership method {method!r}")
    # characteristic-2, t=1, generic c, odd n: ker B[3] = 0, so it is enough
    # to drive every operator multiset of weight d-3 and test the reduced
    # images; intermediate images stay unreduced (no x_n substitution).
    shift = 1
    start = {(0,) * nv: _upstairs_lift(f)}
    depth = d - 3
    leaves = _tree_search(
        start,
        lambda g, j: _raw2_dunkl_z_upstairs(g, j, ctx.n, ctx.t, shift),
        nv,
        depth,
        classes,
        lambda g: not g,
    )
    for a in sorted(leaves):
        reduced = _upstairs_reduce(leaves[a], ctx)
        if reduced.is_zero():
            continue
        # extend the witness with a weight-3 tail on the reduced image
        tail_level = {(0,) * nv: reduced}
        for _ in range(3):
            nxt = {}
            for b, g in tail_level.items():
                for j, child in _multiset_children(b, nv):
                    if child in nxt:
                        continue
                    img = dunkl_z(g, j, ctx)
                    if not img.is_zero():
                        nxt[child] = img
            tail_level = nxt
        for b in sorted(tail_level):
            val = tail_level[b].constant_term()
            if not ctx.domain.is_zero(val):
                witness = tuple(x + y for x, y in zip(a, b))
                return Membership(False, witness, Scalar(ctx.domain, val), "cutoff")
        raise AssertionError(
            "nonzero degree-3 image with no nonzero pairing; "
            "ker B[3] = 0 should make this impossible"
        )
    return Membership(True, method="cutoff")


def is_singular(f: ReducedPoly, ctx: DunklContext) -> bool:
    """True iff every Dunkl operator difference annihilates f exactly."""
    if f.is_zero():
        return True
    for i in range(1, ctx.nvars + 1):
        if not dunkl_z(f, i, ctx).is_zero():
            return False
    return True
