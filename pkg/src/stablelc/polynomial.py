"""Sparse multivariate polynomials over an exact field.

A :class:`PolyRing` fixes the coefficient field and the variable names; a
:class:`Polynomial` is an immutable map from exponent tuples to nonzero
canonical scalars.  Terms are kept in graded-lex order (total degree first,
then lexicographic with ``x1 > x2 > ...``) so serialization is
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .fields import Field, Scalar

Exponents = tuple


class ZeroDegree:
    """Marker returned by :func:`homogeneous_degree` for the zero polynomial."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO"

    def __bool__(self):
        return False


ZERO = ZeroDegree()


class RingMismatch(ValueError):
    pass


@dataclass(frozen=True)
class PolyRing:
    field: Field
    names: tuple

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")

    @property
    def n(self) -> int:
        return len(self.names)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.n: self.field(c)})

    def var(self, name_or_index) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else self.names.index(name_or_index)
        exps = [0] * self.n
        exps[i] = 1
        return Polynomial(self, {tuple(exps): self.field.one()})

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): self.field(coeff)})

    def gens(self) -> list:
        return [self.var(i) for i in range(self.n)]

    def parse(self, text: str) -> "Polynomial":
        from .parser import parse_poly

        return parse_poly(text, self.names, self.field)

    def __str__(self):
        return f"{self.field}[{', '.join(self.names)}]"


def glex_key(exps: Exponents):
    return (sum(exps), exps)


class Polynomial:
    """Immutable sparse polynomial; use ring helpers or arithmetic to build."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Exponents, Scalar], *, canonical=False):
        self.ring = ring
        if canonical:
            clean = dict(terms)
        else:
            F = ring.field
            clean = {}
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != ring.n or any(a < 0 for a in e):
                    raise ValueError(f"bad exponent vector {e} for {ring}")
                c = F(c)
                if c:
                    clean[e] = c
        self._terms = dict(sorted(clean.items(), key=lambda kv: glex_key(kv[0]), reverse=True))
        self._hash = None

    @property
    def field(self) -> Field:
        return self.ring.field

    @property
    def n(self) -> int:
        return self.ring.n

    @property
    def terms(self) -> Mapping[Exponents, Scalar]:
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def constant_term(self) -> Scalar:
        return self._terms.get((0,) * self.n, self.field.zero())

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self._terms)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def homogeneous_degree(self):
        """Common degree of all terms, ``ZERO`` for 0, ``None`` if inhomogeneous."""
        if not self._terms:
            return ZERO
        degs = {sum(e) for e in self._terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        return self.homogeneous_degree() is not None

    # arithmetic -----------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if other.ring.field != self.ring.field or other.ring.n != self.ring.n:
            raise RingMismatch(f"cannot combine polynomials over {self.ring} and {other.ring}")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = F.add(out.get(e, F.zero()), c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out, canonical=True)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Polynomial(self.ring, {e: F.neg(c) for e, c in self._terms.items()}, canonical=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = F.add(out.get(e, F.zero()), F.mul(c1, c2))
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial(self.ring, out, canonical=True)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "Polynomial":
        F = self.field
        c = F(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: F.mul(v, c) for e, v in self._terms.items()}, canonical=True)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return (
                self.ring.field == other.ring.field
                and self.ring.n == other.ring.n
                and self._terms == other._terms
            )
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.field, self.ring.n, frozenset(self._terms.items())))
        return self._hash

    # output ---------------------------------------------------------------

    def to_str(self, names: Sequence[str] | None = None) -> str:
        names = tuple(names) if names is not None else self.ring.names
        if not self._terms:
            return "0"
        F = self.field
        pieces = []
        for e, c in self._terms.items():
            mono = format_monomial(e, names)
            neg = False
            if not F.is_prime_field and c < 0:
                neg, c = True, -c
            if mono and c == 1:
                body = mono
            elif mono:
                body = f"{F.format(c)}*{mono}"
            else:
                body = F.format(c)
            pieces.append((neg, body))
        out = ("-" if pieces[0][0] else "") + pieces[0][1]
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.to_str()!r} over {self.ring})"


def format_monomial(exps: Iterable[int], names: Sequence[str]) -> str:
    """``x^2*y`` style; negative exponents are written as ``x^-2``."""
    parts = []
    for name, a in zip(names, exps):
        if a == 0:
            continue
        parts.append(name if a == 1 else f"{name}^{a}")
    return "*".join(parts)


def homogeneous_degree(p: Polynomial):
    return p.homogeneous_degree()


def poly_arith(op: str, p: Polynomial, q) -> Polynomial:
    """Dispatch one of ``add``, ``sub``, ``mul``, ``scale``."""
    if op == "add":
        return p + _as_poly(p, q)
    if op == "sub":
        return p - _as_poly(p, q)
    if op == "mul":
        return p * _as_poly(p, q)
    if op == "scale":
        if isinstance(q, Polynomial):
            raise TypeError("scale expects a scalar")
        return p.scale(q)
    raise ValueError(f"unknown op {op!r}")


def _as_poly(p: Polynomial, q) -> Polynomial:
    if isinstance(q, Polynomial):
        p._check(q)
        return q
    return p.ring.const(q)


def monomials_of_degree(n: int, d: int) -> list:
    """All exponent tuples of length ``n`` and total degree ``d``, graded-lex descending."""
    if d < 0:
        return []
    if n == 0:
        return [()] if d == 0 else []
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(prefix + (left,))
            return
        for a in range(left, -1, -1):
            rec(prefix + (a,), left - a, slots - 1)

    rec((), d, n)
    return out
