"""Polynomial matrices."""

from __future__ import annotations

from typing import Sequence

from .polynomial import PolyRing, Polynomial, ZERO


class PolyMatrix:
    """Immutable ``rows x cols`` table of polynomials over one ring.

    Zero-sized matrices are allowed; they stand for maps between zero
    modules.
    """

    __slots__ = ("ring", "rows", "cols", "_entries")

    def __init__(self, ring: PolyRing, entries: Sequence[Sequence[Polynomial]], cols: int | None = None):
        self.ring = ring
        self._entries = tuple(tuple(row) for row in entries)
        self.rows = len(self._entries)
        self.cols = len(self._entries[0]) if self._entries else (cols or 0)
        for row in self._entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")
            for p in row:
                if p.ring.field != ring.field or p.ring.n != ring.n:
                    raise ValueError(f"entry {p} not over {ring}")

    @classmethod
    def zeros(cls, ring: PolyRing, rows: int, cols: int) -> "PolyMatrix":
        z = ring.zero()
        return cls(ring, [[z] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, ring: PolyRing, r: int) -> "PolyMatrix":
        return cls.scalar(ring, r, ring.one())

    @classmethod
    def scalar(cls, ring: PolyRing, r: int, p: Polynomial) -> "PolyMatrix":
        z = ring.zero()
        return cls(ring, [[p if i == j else z for j in range(r)] for i in range(r)], cols=r)

    @classmethod
    def from_strings(cls, ring: PolyRing, rows: Sequence[Sequence[str]]) -> "PolyMatrix":
        return cls(ring, [[ring.parse(s) for s in row] for row in rows])

    def __getitem__(self, ij) -> Polynomial:
        i, j = ij
        return self._entries[i][j]

    def row(self, i: int) -> tuple:
        return self._entries[i]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self._entries)

    def to_lists(self) -> list:
        return [list(row) for row in self._entries]

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, [list(self.column(j)) for j in range(self.cols)], cols=self.rows)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        return mat_mul(self, other)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return PolyMatrix(
            self.ring,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._entries, other._entries)],
            cols=self.cols,
        )

    def __neg__(self):
        return PolyMatrix(self.ring, [[-a for a in row] for row in self._entries], cols=self.cols)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self):
        return hash(self._entries)

    def is_constant_free(self) -> bool:
        """True when no entry has a nonzero constant term."""
        return all(not p.constant_term() for row in self._entries for p in row)

    def entry_degrees(self) -> list:
        """Homogeneous degree of every entry (``ZERO`` / ``None`` as in polynomials)."""
        return [[p.homogeneous_degree() for p in row] for row in self._entries]

    def to_str_rows(self) -> list:
        return [[p.to_str() for p in row] for row in self._entries]

    def __repr__(self):
        return f"PolyMatrix({self.to_str_rows()!r})"


def mat_mul(M: PolyMatrix, N: PolyMatrix) -> PolyMatrix:
    if M.cols != N.rows:
        raise ValueError(f"dimension mismatch: {M.shape} @ {N.shape}")
    ring = M.ring
    out = []
    for i in range(M.rows):
        row = []
        for j in range(N.cols):
            acc = ring.zero()
            for k in range(M.cols):
                a, b = M[i, k], N[k, j]
                if a and b:
                    acc = acc + a * b
            row.append(acc)
        out.append(row)
    return PolyMatrix(ring, out, cols=N.cols)


def block_diagonal(ring: PolyRing, *blocks: PolyMatrix) -> PolyMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    z = ring.zero()
    out = [[z] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[r0 + i][c0 + j] = b[i, j]
        r0 += b.rows
        c0 += b.cols
    return PolyMatrix(ring, out, cols=cols)


__all__ = ["PolyMatrix", "mat_mul", "block_diagonal", "ZERO"]
