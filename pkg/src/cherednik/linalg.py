"""Exact row reduction over F_p, F_p(c) and F_{p^k}.

The kernel engine needs three things, all deterministic:

  * compose A = R * D column-by-column, where R is a small dense matrix of
    ring values (the constraint rows of the previous degree) and D is a
    sparse Dunkl matrix whose entries have tiny c-degree;
  * a fraction-free row echelon form of A over the coefficient ring, with
    per-row content stripping so entries stay small;
  * canonical RREF rows over the field, and the kernel of A extracted from
    them, again in canonical RREF under the graded-lex column order.

Generic-c elimination never divides: rows are cross-multiplied and stripped
by their content gcd; division by pivots happens once per degree when rows
are converted to field fractions.  Characteristic-2 rows are packed into
single big integers (entries are F_2[c] bitmasks laid side by side) so that
the inner product against a sparse column is a handful of shifts and XORs.
"""

from __future__ import annotations

from .fields import (
    CoeffDomain,
    EvaluatedField,
    PrimeField,
    RationalFunctionField,
)


class RingAdapter:
    """Elimination operations on raw coefficient values for one domain."""

    def __init__(self, domain: CoeffDomain):
        self.domain = domain
        self.is_generic = isinstance(domain, RationalFunctionField)
        self.ring = getattr(domain, "ring", None)
        if self.is_generic:
            self.zero = self.ring.zero
            self.one = self.ring.one
        else:
            self.zero = domain.from_int(0)
            self.one = domain.from_int(1)

    # -- raw ring ops (polynomials for generic mode, field values otherwise) --

    def add(self, a, b):
        return self.ring.add(a, b) if self.is_generic else self.domain.add(a, b)

    def sub(self, a, b):
        return self.ring.sub(a, b) if self.is_generic else self.domain.sub(a, b)

    def mul(self, a, b):
        return self.ring.mul(a, b) if self.is_generic else self.domain.mul(a, b)

    def neg(self, a):
        return self.ring.neg(a) if self.is_generic else self.domain.neg(a)

    def is_zero(self, a):
        return a == self.zero if self.is_generic else self.domain.is_zero(a)

    def strip_row(self, row):
        """Divide a row by its content so entries stay small (generic mode)."""
        if not self.is_generic:
            return row
        R = self.ring
        g = self.zero
        for v in row:
            if v == self.zero:
                continue
            g = R.gcd(g, v)
            if R.deg(g) == 0:
                return row if g == self.one else row
        if g == self.zero or R.deg(g) == 0:
            return row
        return [R.divmod(v, g)[0] if v != self.zero else v for v in row]

    # -- conversions between ring values and domain field scalars -------------

    def to_scalar(self, v):
        if self.is_generic:
            return (v, self.one)
        return v

    def scalar_div(self, a, b):
        """Field division of two ring values, as a domain scalar."""
        if self.is_generic:
            return self.domain.make(a, b)
        return self.domain.div(a, b)

    def clear_denominators(self, scalar_row: dict):
        """Sparse dict of field scalars -> (dense-able dict of ring values)."""
        if not self.is_generic:
            return dict(scalar_row)
        R = self.ring
        den = self.one
        for num, d in scalar_row.values():
            if d != self.one:
                g = R.gcd(den, d)
                den = R.mul(den, R.divmod(d, g)[0])
        out = {}
        for col, (num, d) in scalar_row.items():
            out[col] = R.mul(num, R.divmod(den, d)[0])
        return out


def adapter_for(domain: CoeffDomain) -> RingAdapter:
    return RingAdapter(domain)


# ---------------------------------------------------------------------------
# A = R * D composition with packing fast paths
# ---------------------------------------------------------------------------


def _gf2_pack_columns(rows: list[list[int]], width: int) -> list[int]:
    """Pack column k of an int-bitmask matrix into one big int (xor algebra)."""
    ncols = len(rows[0]) if rows else 0
    cols = []
    for k in range(ncols):
        acc = 0
        shift = 0
        for row in rows:
            acc |= row[k] << shift
            shift += width
        cols.append(acc)
    return cols


def compose_rows_columns(
    adapter: RingAdapter,
    R_rows: list[list],
    dunkl_columns: list[dict[int, object]],
) -> list[list]:
    """Return the dense matrix (R * D) laid out as rows; D given column-wise.

    R_rows: L x M_prev ring values.  dunkl_columns[j]: sparse {row_prev: val}.
    Result: L x len(dunkl_columns).
    """
    L = len(R_rows)
    ncols = len(dunkl_columns)
    if L == 0:
        return []
    dom = adapter.domain
    p = dom.p
    gf2_like = p == 2 and (
        isinstance(dom, (PrimeField, RationalFunctionField))
        or (isinstance(dom, EvaluatedField))
    )
    if gf2_like:
        max_r = max(
            (v.bit_length() for row in R_rows for v in row), default=1
        )
        max_v = max(
            (v.bit_length() for col in dunkl_columns for v in col.values()),
            default=1,
        )
        width = max_r + max_v + 1
        packed = _gf2_pack_columns(R_rows, width)
        mask = (1 << width) - 1
        out_cols = []
        for col in dunkl_columns:
            acc = 0
            for k, v in col.items():
                pk = packed[k]
                while v:
                    low = v & -v
                    acc ^= pk << (low.bit_length() - 1)
                    v ^= low
            out_cols.append(acc)
        rows = []
        need_reduce = isinstance(dom, EvaluatedField)
        for r in range(L):
            sh = r * width
            row = []
            for acc in out_cols:
                v = (acc >> sh) & mask
                if need_reduce and v:
                    v = dom.ring.divmod(v, dom.modulus)[1]
                row.append(v)
            rows.append(row)
        return rows
    if isinstance(dom, PrimeField):
        # additive packing: entries < p, accumulated sums stay below 2^width
        width = 48
        packed = _gf2_pack_columns(R_rows, width)  # reuse: plain placement
        mask = (1 << width) - 1
        out_cols = []
        for col in dunkl_columns:
            acc = 0
            for k, v in col.items():
                acc += packed[k] * v
            out_cols.append(acc)
        rows = []
        for r in range(L):
            sh = r * width
            rows.append([((acc >> sh) & mask) % p for acc in out_cols])
        return rows
    # general fallback: domain/ring arithmetic entry by entry
    rows = [[adapter.zero] * ncols for _ in range(L)]
    for j, col in enumerate(dunkl_columns):
        for k, v in col.items():
            for r in range(L):
                rv = R_rows[r][k]
                if adapter.is_zero(rv):
                    continue
                rows[r][j] = adapter.add(rows[r][j], adapter.mul(rv, v))
    return rows


# ---------------------------------------------------------------------------
# Fraction-free echelon + canonical RREF + kernel extraction
# ---------------------------------------------------------------------------


def echelon(adapter: RingAdapter, rows: list[list]) -> tuple[list[list], list[int]]:
    """Forward elimination; returns (pivot rows in order, pivot column list).

    Deterministic: scans columns left to right, picks the first remaining row
    with a nonzero entry.  Generic mode cross-multiplies and strips content;
    field modes divide directly.
    """
    if not rows:
        return [], []
    ncols = len(rows[0])
    work = [list(r) for r in rows]
    pivot_rows: list[list] = []
    pivot_cols: list[int] = []
    row_start = 0
    for col in range(ncols):
        sel = None
        for ridx in range(row_start, len(work)):
            if not adapter.is_zero(work[ridx][col]):
                sel = ridx
                break
        if sel is None:
            continue
        work[row_start], work[sel] = work[sel], work[row_start]
        prow = work[row_start]
        pval = prow[col]
        for ridx in range(row_start + 1, len(work)):
            row = work[ridx]
            rv = row[col]
            if adapter.is_zero(rv):
                continue
            if adapter.is_generic:
                new = [
                    adapter.sub(adapter.mul(pval, row[k]), adapter.mul(rv, prow[k]))
                    for k in range(ncols)
                ]
                work[ridx] = adapter.strip_row(new)
            else:
                factor = adapter.domain.div(rv, pval)
                work[ridx] = [
                    adapter.sub(row[k], adapter.mul(factor, prow[k]))
                    for k in range(ncols)
                ]
        pivot_rows.append(prow)
        pivot_cols.append(col)
        row_start += 1
        if row_start == len(work):
            break
    return pivot_rows, pivot_cols


def rref_scalar_rows(
    adapter: RingAdapter, pivot_rows: list[list], pivot_cols: list[int]
) -> list[dict[int, object]]:
    """Back-substitute and normalize to sparse RREF rows of field scalars."""
    nrows = len(pivot_rows)
    rows = [list(r) for r in pivot_rows]
    ncols = len(rows[0]) if rows else 0
    for r in range(nrows - 1, -1, -1):
        pc = pivot_cols[r]
        pv = rows[r][pc]
        for up in range(r):
            uv = rows[up][pc]
            if adapter.is_zero(uv):
                continue
            if adapter.is_generic:
                rows[up] = adapter.strip_row(
                    [
                        adapter.sub(
                            adapter.mul(pv, rows[up][k]),
                            adapter.mul(uv, rows[r][k]),
                        )
                        for k in range(ncols)
                    ]
                )
            else:
                factor = adapter.domain.div(uv, pv)
                rows[up] = [
                    adapter.sub(rows[up][k], adapter.mul(factor, rows[r][k]))
                    for k in range(ncols)
                ]
    out = []
    for r in range(nrows):
        pc = pivot_cols[r]
        pv = rows[r][pc]
        srow: dict[int, object] = {}
        for k in range(ncols):
            v = rows[r][k]
            if not adapter.is_zero(v):
                srow[k] = adapter.scalar_div(v, pv)
        out.append(srow)
    return out


def sparse_rref(domain: CoeffDomain, rows: list[dict[int, object]]):
    """Canonical RREF of sparse field-scalar rows; returns (rows, pivot cols).

    Rows are dicts {column index: scalar value}; the column order is the
    integer order (graded-lex descending monomial rank).
    """
    pivots: dict[int, dict[int, object]] = {}
    for row in rows:
        row = dict(row)
        while row:
            lead = min(row)
            if lead not in pivots:
                lv = row[lead]
                inv = domain.inv(lv)
                row = {k: domain.mul(v, inv) for k, v in row.items()}
                pivots[lead] = row
                break
            prow = pivots[lead]
            fac = row[lead]
            for k, v in prow.items():
                cur = row.get(k)
                nv = (
                    domain.sub(cur, domain.mul(fac, v))
                    if cur is not None
                    else domain.neg(domain.mul(fac, v))
                )
                if domain.is_zero(nv):
                    row.pop(k, None)
                else:
                    row[k] = nv
    # back-substitution across pivot rows
    cols_desc = sorted(pivots, reverse=True)
    for pc in cols_desc:
        prow = pivots[pc]
        for qc, qrow in pivots.items():
            if qc == pc or pc not in qrow:
                continue
            fac = qrow[pc]
            for k, v in prow.items():
                cur = qrow.get(k)
                nv = (
                    domain.sub(cur, domain.mul(fac, v))
                    if cur is not None
                    else domain.neg(domain.mul(fac, v))
                )
                if domain.is_zero(nv):
                    qrow.pop(k, None)
                else:
                    qrow[k] = nv
    ordered = sorted(pivots)
    return [pivots[c] for c in ordered], ordered


def kernel_from_rref(
    domain: CoeffDomain,
    rref_rows: list[dict[int, object]],
    pivot_cols: list[int],
    ncols: int,
):
    """Kernel of the constraint matrix, as canonical sparse RREF rows."""
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    vectors = []
    for f in free_cols:
        v: dict[int, object] = {f: domain.from_int(1)}
        for pc, row in zip(pivot_cols, rref_rows):
            coef = row.get(f)
            if coef is not None and not domain.is_zero(coef):
                v[pc] = domain.neg(coef)
        vectors.append(v)
    return sparse_rref(domain, vectors)


def identity_kernel(domain: CoeffDomain, ncols: int):
    """Kernel basis when there are no constraints: the full space."""
    one = domain.from_int(1)
    return [{c: one} for c in range(ncols)], list(range(ncols))


def reduce_by_rref(
    domain: CoeffDomain, vec: dict[int, object], rref_rows, pivot_cols
) -> dict[int, object]:
    """Normal form of a sparse vector modulo the span of RREF rows."""
    v = dict(vec)
    for pc, row in zip(pivot_cols, rref_rows):
        coef = v.get(pc)
        if coef is None or domain.is_zero(coef):
            continue
        for k, rv in row.items():
            cur = v.get(k)
            nv = (
                domain.sub(cur, domain.mul(coef, rv))
                if cur is not None
                else domain.neg(domain.mul(coef, rv))
            )
            if domain.is_zero(nv):
                v.pop(k, None)
            else:
                v[k] = nv
    return v
