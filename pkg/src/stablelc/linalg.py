"""Sparse exact Gaussian elimination.

Vectors are ``dict[int, scalar]`` with no stored zeros.  Everything is
exact; the only field-specific code is the choice between modular integer
arithmetic and :class:`fractions.Fraction`.
"""

from __future__ import annotations

from typing import Iterable

from .fields import Field


def _axpy(row: dict, coef, pivot_row: dict, p: int) -> None:
    """``row -= coef * pivot_row`` in place."""
    if p:
        for c, v in pivot_row.items():
            w = (row.get(c, 0) - coef * v) % p
            if w:
                row[c] = w
            else:
                row.pop(c, None)
    else:
        for c, v in pivot_row.items():
            w = row.get(c, 0) - coef * v
            if w:
                row[c] = w
            else:
                row.pop(c, None)


class Echelon:
    """Incrementally built row-echelon basis; pivot rows have leading entry 1."""

    def __init__(self, field: Field):
        self.field = field
        self.pivots: dict = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        """Fully reduce a copy of ``row`` modulo the span; returns the residue."""
        row = dict(row)
        p = self.field.p
        pivots = self.pivots
        # Pivot rows only have entries right of their pivot, so eliminating in
        # increasing column order never revisits a column.
        while True:
            hits = [k for k in row if k in pivots]
            if not hits:
                return row
            c = min(hits)
            _axpy(row, row[c], pivots[c], p)

    def add(self, row: dict) -> dict | None:
        """Insert ``row``; returns the new normalized pivot row, or ``None`` if dependent."""
        row = dict(row)
        p = self.field.p
        pivots = self.pivots
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                inv = self.field.inv(row[c])
                if p:
                    row = {k: v * inv % p for k, v in row.items()}
                else:
                    row = {k: v * inv for k, v in row.items()}
                pivots[c] = row
                return row
            _axpy(row, row[c], piv, p)
        return None

    def extend(self, rows: Iterable[dict]) -> "Echelon":
        for r in rows:
            self.add(r)
        return self

    def rref(self) -> list:
        """Reduced row-echelon rows, sorted by pivot column."""
        p = self.field.p
        order = sorted(self.pivots)
        done: dict = {}
        for c in reversed(order):
            row = dict(self.pivots[c])
            for k in sorted(k for k in row if k != c and k in done):
                if k in row:
                    _axpy(row, row[k], done[k], p)
            done[c] = row
        self.pivots = done
        return [done[c] for c in order]


def rank(rows: Iterable[dict], field: Field) -> int:
    return Echelon(field).extend(rows).rank


def kernel(images: list, field: Field) -> list:
    """Basis (in RREF) of ``{c : sum_k c_k * images[k] = 0}``.

    ``images[k]`` is the image of the k-th source basis vector.  Kernel
    vectors are returned as dicts over source indices.
    """
    # Tag columns sit after every target column so the target part is
    # eliminated first; rows whose target part vanishes carry kernel vectors.
    offset = 1 + max((max(v) for v in images if v), default=-1)
    ech = Echelon(field)
    kern = Echelon(field)
    for k, img in enumerate(images):
        row = dict(img)
        row[offset + k] = field.one()
        piv = ech.add(row)
        if piv is not None and min(piv) >= offset:
            kern.add({c - offset: v for c, v in piv.items()})
    return kern.rref()


def kernel_dim(images: list, field: Field, source_dim: int | None = None) -> int:
    n = len(images) if source_dim is None else source_dim
    return n - rank(images, field)


def quotient(space: list, sub: list, field: Field) -> list:
    """Representatives of ``span(space) / span(sub)`` in canonical echelon form.

    Returns RREF rows spanning a complement of ``sub`` inside ``space``,
    each reduced modulo ``sub``.
    """
    sub_ech = Echelon(field).extend(sub)
    sub_ech.rref()
    comp = Echelon(field)
    for v in space:
        res = sub_ech.reduce(v)
        if res:
            comp.add(res)
    return comp.rref()
