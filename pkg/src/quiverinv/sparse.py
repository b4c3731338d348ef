"""Sparse exact elimination: integer rank for derivation systems, and an
incremental echelon basis over a field for span computations."""
from __future__ import annotations

from math import gcd

from .fields import PrimeField


def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        row = {k: v // g for k, v in row.items()}
    return row


def integer_rank(rows, ncols_hint=None) -> int:
    """Rank over QQ of a sparse integer matrix given as a list of {col: int} rows.

    Rows that have a single nonzero entry are peeled off first (each one
    contributes 1 to the rank and deletes its column); the rest is reduced by
    fraction-free leading-column elimination.
    """
    rows = [{c: v for c, v in r.items() if v} for r in rows]
    rows = [r for r in rows if r]
    rank = 0
    # singleton peeling
    dead = set()
    changed = True
    while changed:
        changed = False
        nxt = []
        for r in rows:
            if dead:
                r = {c: v for c, v in r.items() if c not in dead}
            if not r:
                continue
            if len(r) == 1:
                (c,) = r
                if c not in dead:
                    dead.add(c)
                    rank += 1
                    changed = True
                continue
            nxt.append(r)
        rows = nxt
    pivots = {}
    for r in sorted(rows, key=len):
        r = dict(r)
        while r:
            c = max(r)
            p = pivots.get(c)
            if p is None:
                pivots[c] = _primitive(r)
                rank += 1
                break
            a, b = p[c], r[c]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {k: a * v for k, v in r.items()}
            for k, v in p.items():
                s = new.get(k, 0) - b * v
                if s:
                    new[k] = s
                else:
                    new.pop(k, None)
            r = _primitive(new) if new else new
    return rank


class EchelonBasis:
    """Incrementally maintained reduced echelon basis of sparse vectors over a field.

    Vectors are dicts {key: field element}; the pivot of a row is its largest key.
    """

    def __init__(self, field):
        self.field = field
        self.rows = {}  # pivot key -> row with row[pivot] == 1

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        v = dict(vec)
        rows = self.rows
        while v:
            hits = [k for k in v if k in rows]
            if not hits:
                break
            for k in hits:
                c = v.get(k)
                if not c:
                    continue
                for kk, rv in rows[k].items():
                    s = v.get(kk)
                    s = -c * rv if s is None else s - c * rv
                    if s:
                        v[kk] = s
                    else:
                        v.pop(kk, None)
        return v

    def add(self, vec: dict) -> bool:
        """Insert vec; returns True if it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        piv = max(v)
        inv = 1 / v[piv] if not isinstance(self.field, PrimeField) else v[piv].inverse()
        v = {k: c * inv for k, c in v.items()}
        # keep the basis fully reduced at the new pivot
        for k, row in self.rows.items():
            c = row.get(piv)
            if c:
                for kk, vv in v.items():
                    s = row.get(kk)
                    s = -c * vv if s is None else s - c * vv
                    if s:
                        row[kk] = s
                    else:
                        row.pop(kk, None)
        self.rows[piv] = v
        return True

    def vectors(self):
        return [dict(r) for _, r in sorted(self.rows.items())]
