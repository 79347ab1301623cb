"""Exact sparse matrix ranks over Q and F_p.

The certified path is fraction-free integer elimination: while a unit pivot
exists the updates are plain integer row operations; otherwise rows are
cross-multiplied and re-normalized by their gcd, so every intermediate entry
stays integral.  Modular elimination over word-sized primes is the fast path;
F_2 gets a bitmask specialization.  Boundary matrices of order complexes are
the intended workload: entries 0/+-1 and a handful of nonzeros per row.
"""

from __future__ import annotations

from math import gcd


def rank_gf2(rows: list[int]) -> int:
    """Rank over F_2 of rows given as bitmasks."""
    pivots: dict[int, int] = {}
    rank = 0
    for row in rows:
        while row:
            c = row.bit_length() - 1
            piv = pivots.get(c)
            if piv is None:
                pivots[c] = row
                rank += 1
                break
            row ^= piv
    return rank


class _SparseEliminator:
    """Shared scaffolding: rows as dicts col -> value, Markowitz-ish pivoting."""

    def __init__(self, rows: list[dict[int, int]]):
        self.rows = [dict(r) for r in rows if r]
        self.col_rows: dict[int, set[int]] = {}
        for ri, r in enumerate(self.rows):
            for c in r:
                self.col_rows.setdefault(c, set()).add(ri)
        self.alive = set(range(len(self.rows)))

    def pick_pivot(self, prefer_unit: bool) -> tuple[int, int]:
        # cheapest row first, then the sparsest column in it
        best = None
        best_cost = None
        sample = sorted(self.alive, key=lambda ri: len(self.rows[ri]))[:64]
        for ri in sample:
            row = self.rows[ri]
            rlen = len(row)
            for c, v in row.items():
                unit = abs(v) == 1
                if prefer_unit and not unit:
                    continue
                cost = (rlen - 1) * (len(self.col_rows[c]) - 1)
                key = (not unit, cost)
                if best_cost is None or key < best_cost:
                    best_cost = key
                    best = (ri, c)
                    if cost == 0 and unit:
                        return best
            if best is not None and best_cost[1] <= (rlen - 1):
                break
        if best is None and prefer_unit:
            return self.pick_pivot(False)
        return best

    def detach(self, ri: int) -> None:
        for c in self.rows[ri]:
            self.col_rows[c].discard(ri)
        self.alive.discard(ri)

    def set_row(self, ri: int, new: dict[int, int]) -> None:
        old = self.rows[ri]
        for c in old:
            self.col_rows[c].discard(ri)
        self.rows[ri] = new
        if new:
            for c in new:
                self.col_rows.setdefault(c, set()).add(ri)
        else:
            self.alive.discard(ri)


def rank_exact(rows: list[dict[int, int]]) -> int:
    """Exact rank over Q by fraction-free sparse integer elimination."""
    el = _SparseEliminator(rows)
    rank = 0
    while el.alive:
        ri, c = el.pick_pivot(prefer_unit=True)
        prow = el.rows[ri]
        pval = prow[c]
        el.detach(ri)
        rank += 1
        for rj in list(el.col_rows.get(c, ())):
            row = el.rows[rj]
            v = row[c]
            new: dict[int, int] = {}
            if abs(pval) == 1:
                f = -v * pval          # pval in {1,-1}: row - (v/pval) * prow
                for cc, vv in row.items():
                    if cc != c:
                        new[cc] = vv
                for cc, vv in prow.items():
                    if cc == c:
                        continue
                    s = new.get(cc, 0) + f * vv
                    if s:
                        new[cc] = s
                    elif cc in new:
                        del new[cc]
            else:
                g = gcd(pval, v)
                a, b = pval // g, v // g
                for cc, vv in row.items():
                    if cc != c:
                        new[cc] = a * vv
                for cc, vv in prow.items():
                    if cc == c:
                        continue
                    s = new.get(cc, 0) - b * vv
                    if s:
                        new[cc] = s
                    elif cc in new:
                        del new[cc]
                if new:
                    g2 = 0
                    for vv in new.values():
                        g2 = gcd(g2, vv)
                        if g2 == 1:
                            break
                    if g2 > 1:
                        new = {cc: vv // g2 for cc, vv in new.items()}
            el.set_row(rj, new)
        del el.col_rows[c]
    return rank


def rank_mod(rows: list[dict[int, int]], p: int) -> int:
    """Rank over F_p by sparse modular elimination."""
    reduced = []
    for r in rows:
        rr = {c: v % p for c, v in r.items() if v % p}
        if rr:
            reduced.append(rr)
    if p == 2:
        return rank_gf2([_mask(r) for r in reduced])
    el = _SparseEliminator(reduced)
    rank = 0
    while el.alive:
        ri, c = el.pick_pivot(prefer_unit=False)
        prow = el.rows[ri]
        pinv = pow(prow[c], -1, p)
        el.detach(ri)
        rank += 1
        for rj in list(el.col_rows.get(c, ())):
            row = el.rows[rj]
            f = (-row[c] * pinv) % p
            new: dict[int, int] = {}
            for cc, vv in row.items():
                if cc != c:
                    new[cc] = vv
            for cc, vv in prow.items():
                if cc == c:
                    continue
                s = (new.get(cc, 0) + f * vv) % p
                if s:
                    new[cc] = s
                elif cc in new:
                    del new[cc]
            el.set_row(rj, new)
        del el.col_rows[c]
    return rank


def _mask(row: dict[int, int]) -> int:
    m = 0
    for c in row:
        m |= 1 << c
    return m


def random_30bit_primes(count: int, seed: int = 0) -> list[int]:
    """Deterministic sample of distinct 30-bit primes."""
    import random

    from sympy import nextprime

    rng = random.Random(seed)
    out: list[int] = []
    while len(out) < count:
        p = int(nextprime(rng.randrange(1 << 29, 1 << 30)))
        if p not in out:
            out.append(p)
    return out
