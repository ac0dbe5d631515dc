"""Exact incremental row spaces over a field.

Vectors are dense lists of scalar-field payloads.  Each stored row keeps a
provenance combination over the inserted vectors, so membership queries can
return explicit coordinates, not just a yes/no.
"""

from __future__ import annotations


class RowSpace:
    def __init__(self, field, dim):
        self.field = field
        self.dim = dim
        self.rows = []  # (pivot_col, vec, combo dict: inserted index -> payload)
        self.inserted = 0

    def _reduce(self, vec, combo):
        f = self.field
        zero = f._zero()
        vec = list(vec)
        combo = dict(combo)
        for pivot_col, rvec, rcombo in self.rows:
            c = vec[pivot_col]
            if c == zero:
                continue
            for i in range(self.dim):
                if rvec[i] != zero:
                    vec[i] = f._add(vec[i], f._neg(f._mul(c, rvec[i])))
            for j, w in rcombo.items():
                delta = f._neg(f._mul(c, w))
                combo[j] = f._add(combo.get(j, zero), delta)
        return vec, combo

    def insert(self, vec):
        """Add a vector; returns True when the space grew."""
        f = self.field
        zero = f._zero()
        idx = self.inserted
        self.inserted += 1
        vec, combo = self._reduce(vec, {idx: f._one()})
        pivot_col = next((i for i, v in enumerate(vec) if v != zero), None)
        if pivot_col is None:
            return False
        inv = f._inv(vec[pivot_col])
        vec = [f._mul(inv, v) for v in vec]
        combo = {j: f._mul(inv, w) for j, w in combo.items() if w != zero}
        self.rows.append((pivot_col, vec, combo))
        return True

    @property
    def rank(self):
        return len(self.rows)

    def solve(self, vec):
        """Coordinates of vec over the inserted vectors, or None.

        The result maps inserted-vector indices to nonzero payloads c_j with
        vec = sum_j c_j * inserted_j.
        """
        f = self.field
        zero = f._zero()
        vec = list(vec)
        expr = {}
        for pivot_col, rvec, rcombo in self.rows:
            c = vec[pivot_col]
            if c == zero:
                continue
            for i in range(self.dim):
                if rvec[i] != zero:
                    vec[i] = f._add(vec[i], f._neg(f._mul(c, rvec[i])))
            for j, w in rcombo.items():
                expr[j] = f._add(expr.get(j, zero), f._mul(c, w))
        if any(v != zero for v in vec):
            return None
        return {j: w for j, w in expr.items() if w != zero}

    def contains(self, vec):
        return self.solve(vec) is not None
