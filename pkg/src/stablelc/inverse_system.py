"""Macaulay inverse systems.

The injective hull ``E`` of the residue field of ``k[x1..xn]`` is modelled
as the span of *dual monomials* ``x^a`` with every ``a_i <= -1``; a
polynomial acts by contraction::

    x^b * x^a = x^(a+b)   if a + b <= -1 componentwise, else 0.

A dual monomial has raw degree ``sum(a)``.  A free direct sum ``E^r``
carries one integer twist per copy; an element ``x^a`` of copy ``i`` sits
in degree ``sum(a) + twist[i]``.

``E`` is never materialized.  Each function works on one graded piece,
which is finite-dimensional, so every answer is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import comb
from typing import Sequence

from . import linalg
from .fields import Field
from .matrix import PolyMatrix
from .polynomial import Polynomial, monomials_of_degree, format_monomial


class DegreeError(ValueError):
    """An entry is inhomogeneous or its degree disagrees with the twists."""


def e_dim(n: int, j: int, twist: int = 0) -> int:
    """Number of dual monomials in ``n`` variables in twisted degree ``j``."""
    raw = j - twist
    if n == 0:
        return 1 if raw == 0 else 0
    if raw > -n:
        return 0
    return comb(-raw - 1, n - 1)


def dual_monomials(n: int, raw_degree: int) -> list:
    """Exponent tuples with all entries ``<= -1`` summing to ``raw_degree``.

    Ordered graded-lex on the negated exponents, descending.
    """
    return [tuple(-b - 1 for b in bs) for bs in monomials_of_degree(n, -raw_degree - n)]


def contract(p: Polynomial, a: Sequence[int]) -> dict:
    """Contraction ``p * x^a`` as ``{exponents: coefficient}``."""
    out: dict = {}
    F = p.field
    for b, c in p.items():
        e = tuple(x + y for x, y in zip(a, b))
        if all(x <= -1 for x in e):
            v = F.add(out.get(e, F.zero()), c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def slice_basis(n: int, twists: Sequence[int], j: int) -> list:
    """Canonical basis ``[(copy, exponents), ...]`` of ``E^r`` in degree ``j``."""
    basis = []
    for i, tw in enumerate(twists):
        for a in dual_monomials(n, j - tw):
            basis.append((i, a))
    basis.sort(key=lambda ca: (sum(ca[1]), tuple(ca[1]), ca[0]))
    return basis


def format_dual(exps: Sequence[int], names: Sequence[str]) -> str:
    return format_monomial(exps, names)


def format_vector(row: dict, basis: list, r: int, names: Sequence[str], F: Field) -> str:
    """Render a coordinate vector as a sum of dual monomials (a tuple if ``r > 1``)."""
    per_copy: list = [[] for _ in range(r)]
    for idx in sorted(row):
        copy, a = basis[idx]
        per_copy[copy].append((a, row[idx]))

    def render(terms):
        if not terms:
            return "0"
        parts = []
        for a, c in terms:
            mono = format_dual(a, names) or "1"
            s = str(c)
            if F.is_prime_field or c >= 0:
                parts.append(("+", mono if c == 1 else f"{s}*{mono}"))
            else:
                parts.append(("-", mono if c == -1 else f"{-c}*{mono}"))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    if r == 1:
        return render(per_copy[0])
    return "(" + ", ".join(render(t) for t in per_copy) + ")"


@dataclass
class DualSlice:
    """One graded piece of a subquotient of ``E^r``.

    ``rows`` are RREF coordinate vectors over ``basis``: a spanning set of
    the subspace in kernel/space mode, canonical representatives of the
    quotient in cokernel mode.
    """

    degree: int
    twists: tuple
    basis: list
    mode: str
    rows: list = dc_field(default_factory=list)
    names: tuple = ()
    field: Field | None = None

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def r(self) -> int:
        return len(self.twists)

    def basis_strings(self) -> list:
        s = [format_dual(a, self.names) for _, a in self.basis]
        if self.r == 1:
            return s
        return [f"e{c}*{m}" for (c, _), m in zip(self.basis, s)]

    def vector_strings(self) -> list:
        return [format_vector(row, self.basis, self.r, self.names, self.field) for row in self.rows]

    def dense_rows(self) -> list:
        z = self.field.zero() if self.field else 0
        return [[row.get(i, z) for i in range(len(self.basis))] for row in self.rows]

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "mode": self.mode,
            "dim": self.dim,
            "basis": self.basis_strings(),
            "rows": [[str(v) for v in row] for row in self.dense_rows()],
            "elements": self.vector_strings(),
        }


def infer_target_twists(M: PolyMatrix, src_twists: Sequence[int]) -> list:
    """Target twists forced by nonzero entries; rows with no entries get 0."""
    out = []
    for i in range(M.rows):
        val = None
        for k in range(M.cols):
            d = M[i, k].homogeneous_degree()
            if d is None:
                raise DegreeError(f"entry ({i}, {k}) is not homogeneous")
            if M[i, k]:
                cand = src_twists[k] - d
                if val is not None and val != cand:
                    raise DegreeError(f"row {i}: entries imply twists {val} and {cand}")
                val = cand
        out.append(0 if val is None else val)
    return out


def _check_degrees(M: PolyMatrix, src: Sequence[int], tgt: Sequence[int]) -> None:
    if len(src) != M.cols or len(tgt) != M.rows:
        raise DegreeError(f"twist lengths {len(src)}, {len(tgt)} do not fit a {M.rows}x{M.cols} matrix")
    for i in range(M.rows):
        for k in range(M.cols):
            p = M[i, k]
            if not p:
                continue
            d = p.homogeneous_degree()
            if d is None:
                raise DegreeError(f"entry ({i}, {k}) = {p} is not homogeneous")
            if d != src[k] - tgt[i]:
                raise DegreeError(
                    f"entry ({i}, {k}) has degree {d}, twists need {src[k] - tgt[i]}"
                )


def _images(M: PolyMatrix, src_basis: list, tgt_index: dict) -> list:
    """Image of each source basis vector as a coordinate dict over the target basis."""
    F = M.ring.field
    images = []
    for k, a in src_basis:
        img: dict = {}
        for i in range(M.rows):
            p = M[i, k]
            if not p:
                continue
            for e, c in contract(p, a).items():
                idx = tgt_index[(i, e)]
                v = F.add(img.get(idx, F.zero()), c)
                if v:
                    img[idx] = v
                else:
                    img.pop(idx)
        images.append(img)
    return images


def _apply(images: list, vec: dict, F: Field) -> dict:
    out: dict = {}
    get = out.get
    for k, c in vec.items():
        for idx, v in images[k].items():
            out[idx] = get(idx, 0) + c * v
    p = F.p
    if p:
        return {k: w % p for k, w in out.items() if w % p}
    return {k: w for k, w in out.items() if w}


def map_slice(M: PolyMatrix, src_twists, tgt_twists, j: int):
    """Source basis, target basis and images of the degree-``j`` contraction map."""
    _check_degrees(M, src_twists, tgt_twists)
    n = M.ring.n
    src = slice_basis(n, src_twists, j)
    tgt = slice_basis(n, tgt_twists, j)
    tgt_index = {b: i for i, b in enumerate(tgt)}
    return src, tgt, _images(M, src, tgt_index)


def matrix_kernel_slice(M: PolyMatrix, src_twists, j: int, tgt_twists=None) -> DualSlice:
    """Kernel of ``M`` acting by contraction on ``E^r`` in degree ``j``."""
    if tgt_twists is None:
        tgt_twists = infer_target_twists(M, src_twists)
    src, _, images = map_slice(M, src_twists, tgt_twists, j)
    F = M.ring.field
    rows = linalg.kernel(images, F)
    return DualSlice(j, tuple(src_twists), src, "kernel", rows, M.ring.names, F)


def matrix_kernel_dim(M: PolyMatrix, src_twists, j: int, tgt_twists=None) -> int:
    if tgt_twists is None:
        tgt_twists = infer_target_twists(M, src_twists)
    src, _, images = map_slice(M, src_twists, tgt_twists, j)
    return len(src) - linalg.rank(images, M.ring.field)


def annihilator_vectors(f: Polynomial, twists: Sequence[int], j: int, basis: list | None = None) -> list:
    """RREF basis of ``(0 :_E f)^r`` in degree ``j`` over :func:`slice_basis`."""
    n = f.ring.n
    F = f.field
    if basis is None:
        basis = slice_basis(n, twists, j)
    if f.is_zero():
        return [{i: F.one()} for i in range(len(basis))]
    e = f.homogeneous_degree()
    if e is None:
        raise DegreeError(f"{f} is not homogeneous")
    if len(f) == 1:
        # Monomial f: the annihilator is spanned by the dual monomials it kills.
        return [{i: F.one()} for i, (_, a) in enumerate(basis) if not contract(f, a)]
    # The annihilator splits over copies, and each copy only depends on its
    # raw degree, so solve once per raw degree and place the result.
    where: dict = {}
    for idx, (copy, a) in enumerate(basis):
        where[(copy, a)] = idx
    out = []
    for copy, tw in enumerate(twists):
        raw = _raw_annihilator(f, j - tw)
        for vec in raw:
            out.append({where[(copy, a)]: c for a, c in vec})
    out.sort(key=min)
    return out


@lru_cache(maxsize=4096)
def _raw_annihilator(f: Polynomial, raw: int) -> tuple:
    """RREF basis of ``(0 :_E f)`` in raw degree ``raw`` as tuples of ``(exponents, coeff)``."""
    mons = sorted(dual_monomials(f.ring.n, raw))
    if not mons:
        return ()
    index: dict = {}
    images = []
    for a in mons:
        img = {}
        for ex, c in contract(f, a).items():
            img[index.setdefault(ex, len(index))] = c
        images.append(img)
    return tuple(
        tuple((mons[k], c) for k, c in sorted(vec.items())) for vec in linalg.kernel(images, f.field)
    )


def annihilator_slice(f: Polynomial, j: int, twists: Sequence[int] = (0,)) -> DualSlice:
    """Degree-``j`` piece of ``E_R = (0 :_E f)`` (one copy per twist)."""
    basis = slice_basis(f.ring.n, twists, j)
    rows = annihilator_vectors(f, twists, j, basis)
    return DualSlice(j, tuple(twists), basis, "space", rows, f.ring.names, f.field)


def matrix_cokernel_slice(
    M: PolyMatrix, src_twists, tgt_twists, j: int, f: Polynomial | None = None
) -> DualSlice:
    """Cokernel of ``M`` acting on ``E^r`` (or on ``(0 :_E f)^r`` when ``f`` is given) in degree ``j``.

    The map has degree 0 with respect to the twists, so the image in degree
    ``j`` is spanned by images of the degree-``j`` source slice.
    """
    src, tgt, images = map_slice(M, src_twists, tgt_twists, j)
    F = M.ring.field
    if f is None:
        space = [{i: F.one()} for i in range(len(tgt))]
        image = images
    else:
        space = annihilator_vectors(f, tgt_twists, j, tgt)
        image = [_apply(images, v, F) for v in annihilator_vectors(f, src_twists, j, src)]
    reps = linalg.quotient(space, image, F)
    return DualSlice(j, tuple(tgt_twists), tgt, "cokernel", reps, M.ring.names, F)


def matrix_cokernel_dim(M: PolyMatrix, src_twists, tgt_twists, j: int, f: Polynomial | None = None) -> int:
    src, tgt, images = map_slice(M, src_twists, tgt_twists, j)
    F = M.ring.field
    if f is None:
        return len(tgt) - linalg.rank(images, F)
    space_dim = len(annihilator_vectors(f, tgt_twists, j, tgt))
    image = [_apply(images, v, F) for v in annihilator_vectors(f, src_twists, j, src)]
    return space_dim - linalg.rank(image, F)


def restricted_kernel_dim(
    M: PolyMatrix, src_twists, tgt_twists, j: int, f: Polynomial
) -> int:
    """Kernel dimension of ``M`` restricted to ``(0 :_E f)^r`` in degree ``j``."""
    src, tgt, images = map_slice(M, src_twists, tgt_twists, j)
    F = M.ring.field
    vecs = annihilator_vectors(f, src_twists, j, src)
    return len(vecs) - linalg.rank([_apply(images, v, F) for v in vecs], F)


def restricted_image_dim(M: PolyMatrix, src_twists, tgt_twists, j: int, f: Polynomial) -> int:
    src, tgt, images = map_slice(M, src_twists, tgt_twists, j)
    F = M.ring.field
    vecs = annihilator_vectors(f, src_twists, j, src)
    return linalg.rank([_apply(images, v, F) for v in vecs], F)
