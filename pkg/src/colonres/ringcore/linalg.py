"""Exact Gaussian elimination over a Field.

The workhorse is :class:`Echelon`, an incrementally built row-echelon basis
of a subspace of ``field^K`` where coordinates are indexed by arbitrary
comparable keys.  Each stored row has its pivot at its smallest key, so a
vector is reduced by sweeping its keys in increasing order.  With
``track=True`` every row remembers which inserted vectors it combines,
which turns insertion into a kernel finder and reduction into a solver.

The dense helpers ``rank``, ``kernel`` and ``linear_solve`` operate on
list-of-rows matrices and are thin wrappers around it.
"""

from __future__ import annotations

import heapq

from ..errors import InputError
from .field import Field


class Echelon:
    __slots__ = ("field", "p", "rows", "combos", "track")

    def __init__(self, field: Field, track: bool = False):
        self.field = field
        self.p = field.characteristic
        self.rows: dict = {}
        self.combos: dict = {}
        self.track = track

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> list:
        return sorted(self.rows)

    def reduce(self, vec: dict):
        """Return (remainder, combo) with vec = remainder + sum(combo[t] * inserted[t])."""
        p = self.p
        f = self.field
        rows = self.rows
        v = {k: c for k, c in vec.items() if c != 0}
        combo: dict = {}
        if not rows:
            return v, combo
        heap = list(v)
        heapq.heapify(heap)
        seen = set()
        while heap:
            k = heapq.heappop(heap)
            if k in seen:
                continue
            seen.add(k)
            c = v.get(k)
            if c is None:
                continue
            row = rows.get(k)
            if row is None:
                continue
            for key, val in row.items():
                old = v.get(key)
                nv = (0 if old is None else old) - c * val
                if p:
                    nv %= p
                if nv == 0:
                    if old is not None:
                        del v[key]
                else:
                    if old is None:
                        heapq.heappush(heap, key)
                    v[key] = nv
            if self.track:
                for t, val in self.combos[k].items():
                    nv = combo.get(t, 0) + c * val
                    if p:
                        nv %= p
                    if nv == 0:
                        combo.pop(t, None)
                    else:
                        combo[t] = nv
        if not p:
            v = {k: f.normalize(c) for k, c in v.items()}
            combo = {t: f.normalize(c) for t, c in combo.items()}
        return v, combo

    def insert(self, vec: dict, tag=None):
        """Add vec to the span.

        Returns None if vec was independent; otherwise (with tracking) the
        relation {tag: 1, t: -c, ...} expressing a kernel vector.
        """
        rem, combo = self.reduce(vec)
        if not rem:
            if not self.track:
                return {}
            rel = {t: -c % self.p if self.p else -c for t, c in combo.items()}
            rel[tag] = 1
            return rel
        piv = min(rem)
        inv = self.field.inv(rem[piv])
        f = self.field
        self.rows[piv] = {k: f.normalize(c * inv) for k, c in rem.items()}
        if self.track:
            c2 = {t: f.normalize(-c * inv) for t, c in combo.items()}
            c2[tag] = f.normalize(c2.get(tag, 0) + inv)
            self.combos[piv] = {t: c for t, c in c2.items() if c != 0}
        return None

    def contains(self, vec: dict) -> bool:
        rem, _ = self.reduce(vec)
        return not rem

    def solve(self, vec: dict):
        """Combination of inserted tags equal to vec, or None."""
        rem, combo = self.reduce(vec)
        return None if rem else combo


def _shape(A):
    m = len(A)
    n = len(A[0]) if m else 0
    if any(len(r) != n for r in A):
        raise InputError("ragged matrix")
    return m, n


def _column_echelon(A, field: Field):
    """Insert the columns of A (tagged by index); return (echelon, kernel relations)."""
    m, n = _shape(A)
    ech = Echelon(field, track=True)
    rels = []
    for j in range(n):
        col = {i: field(A[i][j]) for i in range(m) if field(A[i][j]) != 0}
        rel = ech.insert(col, j)
        if rel is not None:
            rels.append(rel)
    return ech, rels


def rank(A, field: Field) -> int:
    m, n = _shape(A)
    ech = Echelon(field)
    for row in A:
        ech.insert({j: field(c) for j, c in enumerate(row) if field(c) != 0})
    return ech.rank


def kernel(A, field: Field, ncols: int | None = None) -> list:
    """Basis of the null space of A, as lists of field elements."""
    m, n = _shape(A)
    if m == 0:
        if ncols is None:
            raise InputError("number of columns unknown for an empty matrix")
        n = ncols
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    _, rels = _column_echelon(A, field)
    return [[rel.get(j, 0) for j in range(n)] for rel in rels]


def linear_solve(A, b, field: Field):
    """Some x with A x = b, or None if the system is inconsistent."""
    m, n = _shape(A)
    if len(b) != m:
        raise InputError(f"right-hand side has length {len(b)}, expected {m}")
    ech, _ = _column_echelon(A, field)
    combo = ech.solve({i: field(c) for i, c in enumerate(b) if field(c) != 0})
    if combo is None:
        return None
    return [combo.get(j, 0) for j in range(n)]
