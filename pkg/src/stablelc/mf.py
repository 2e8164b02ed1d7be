"""Graded matrix factorizations.

A factorization of a homogeneous ``f`` of degree ``e`` is a pair of square
matrices with ``A @ B == B @ A == f * I``.  Twist data make both maps
homogeneous of degree 0::

    A : F1 = (+)_j Q(-t_j) -> F0 = (+)_i Q(-s_i),   deg A[i][j] = t[j] - s[i]
    B : F0(-e)             -> F1,                   deg B[i][j] = e + s[j] - t[i]

``coker(A)`` is the maximal Cohen-Macaulay module ``M`` over ``R = Q/(f)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field, replace
from typing import Sequence

from . import linalg
from .matrix import PolyMatrix, block_diagonal, mat_mul
from .polynomial import PolyRing, Polynomial, ZERO, monomials_of_degree


class InvalidFactorization(ValueError):
    def __init__(self, report: "ValidationReport"):
        super().__init__("invalid matrix factorization: " + "; ".join(report.messages()))
        self.report = report


@dataclass(frozen=True)
class Failure:
    condition: str
    index: tuple | None
    detail: str

    def __str__(self):
        where = f" at {self.index}" if self.index is not None else ""
        return f"{self.condition}{where}: {self.detail}"


@dataclass
class ValidationReport:
    failures: list = dc_field(default_factory=list)
    minimal: bool | None = None

    @property
    def valid(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.valid

    def messages(self) -> list:
        return [str(f) for f in self.failures]

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "minimal": self.minimal,
            "failures": [
                {"condition": f.condition, "index": list(f.index) if f.index else None, "detail": f.detail}
                for f in self.failures
            ],
        }


@dataclass(frozen=True)
class MatrixFactorization:
    ring: PolyRing
    f: Polynomial
    A: PolyMatrix
    B: PolyMatrix
    s: tuple
    t: tuple

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(self.s))
        object.__setattr__(self, "t", tuple(self.t))

    @property
    def r(self) -> int:
        return self.A.rows

    @property
    def n(self) -> int:
        return self.ring.n

    @property
    def e(self) -> int:
        d = self.f.homogeneous_degree()
        if d is None or d is ZERO:
            raise InvalidFactorization(validate_mf(self))
        return d

    @property
    def field(self):
        return self.ring.field

    def shifted(self, k: int) -> "MatrixFactorization":
        """Same matrices with every twist raised by ``k``."""
        return replace(self, s=tuple(x + k for x in self.s), t=tuple(x + k for x in self.t))

    def describe(self) -> str:
        return f"mf(f={self.f}, r={self.r}, s={list(self.s)}, t={list(self.t)})"


def validate_mf(mf: MatrixFactorization) -> ValidationReport:
    """Check every structural condition; failures are collected, not raised."""
    rep = ValidationReport()
    fail = rep.failures.append
    ring, f, A, B = mf.ring, mf.f, mf.A, mf.B
    r = A.rows

    for name, X in (("A", A), ("B", B)):
        if X.ring.field != ring.field or X.ring.n != ring.n:
            fail(Failure("ring", None, f"{name} is not over {ring}"))
            return rep
    if f.ring.field != ring.field or f.ring.n != ring.n:
        fail(Failure("ring", None, "f is not over the factorization ring"))
        return rep

    e = f.homogeneous_degree()
    if e is ZERO:
        fail(Failure("f_nonzero", None, "f is zero"))
    elif e is None:
        fail(Failure("f_homogeneous", None, f"f = {f} is not homogeneous"))
    elif e == 0:
        fail(Failure("f_nonunit", None, f"f = {f} is a unit"))

    shape_ok = A.shape == (r, r) and B.shape == (r, r) and len(mf.s) == r and len(mf.t) == r
    if not shape_ok:
        fail(Failure("shape", None, f"A {A.shape}, B {B.shape}, |s|={len(mf.s)}, |t|={len(mf.t)}"))
        return rep

    for name, X, first, second in (("A", A, A, B), ("B", B, B, A)):
        prod = mat_mul(first, second)
        for i in range(r):
            for j in range(r):
                want = f if i == j else ring.zero()
                if prod[i, j] != want:
                    label = "AB" if name == "A" else "BA"
                    fail(Failure(f"{label}=fI", (i, j), f"{label}[{i}][{j}] = {prod[i, j]}, expected {want}"))

    if isinstance(e, int) and e is not ZERO:
        for i in range(r):
            for j in range(r):
                for name, X, want in (
                    ("A", A, mf.t[j] - mf.s[i]),
                    ("B", B, e + mf.s[j] - mf.t[i]),
                ):
                    p = X[i, j]
                    if not p:
                        continue
                    d = p.homogeneous_degree()
                    if d is None:
                        fail(Failure(f"{name}_homogeneous", (i, j), f"{name}[{i}][{j}] = {p} is not homogeneous"))
                    elif d != want:
                        fail(Failure(f"{name}_degree", (i, j), f"{name}[{i}][{j}] has degree {d}, twists require {want}"))
    if rep.valid:
        rep.minimal = is_minimal(mf)
    return rep


def require_valid(mf: MatrixFactorization) -> None:
    rep = validate_mf(mf)
    if not rep.valid:
        raise InvalidFactorization(rep)


def infer_twists(ring: PolyRing, f: Polynomial, A: PolyMatrix, B: PolyMatrix):
    """Solve the homogeneity laws for ``(s, t)``; ``None`` if inconsistent.

    Each connected block of constraints is normalized by its smallest
    ``s`` (or ``t`` when a block has no ``s`` node) so that it equals 0.
    """
    e = f.homogeneous_degree()
    r = A.rows
    if e is None or e is ZERO or A.shape != (r, r) or B.shape != (r, r):
        return None
    # nodes 0..r-1 are s_i, r..2r-1 are t_j; edge (u, v, w) means value[v] = value[u] + w
    adj: list = [[] for _ in range(2 * r)]
    for i in range(r):
        for j in range(r):
            for X, u, v, base in ((A, i, r + j, 0), (B, r + i, j, -e)):
                p = X[i, j]
                if not p:
                    continue
                d = p.homogeneous_degree()
                if d is None:
                    return None
                if X is A:
                    w = d  # t_j = s_i + d
                else:
                    w = d + base  # s_j = t_i + d - e
                adj[u].append((v, w))
                adj[v].append((u, -w))
    value: list = [None] * (2 * r)
    for start in range(2 * r):
        if value[start] is not None:
            continue
        value[start] = 0
        comp = [start]
        stack = [start]
        while stack:
            u = stack.pop()
            for v, w in adj[u]:
                if value[v] is None:
                    value[v] = value[u] + w
                    comp.append(v)
                    stack.append(v)
                elif value[v] != value[u] + w:
                    return None
        s_nodes = [value[u] for u in comp if u < r]
        shift = min(s_nodes) if s_nodes else min(value[u] for u in comp)
        for u in comp:
            value[u] -= shift
    return tuple(value[:r]), tuple(value[r:])


def make_mf(ring: PolyRing, f, A, B, s=None, t=None, *, validate=True) -> MatrixFactorization:
    """Build a factorization from polynomials or strings, inferring missing twists."""
    if isinstance(f, str):
        f = ring.parse(f)
    if not isinstance(A, PolyMatrix):
        A = PolyMatrix(ring, [[ring.parse(x) if isinstance(x, str) else x for x in row] for row in A], cols=len(A))
    if not isinstance(B, PolyMatrix):
        B = PolyMatrix(ring, [[ring.parse(x) if isinstance(x, str) else x for x in row] for row in B], cols=len(B))
    if s is None or t is None:
        tw = infer_twists(ring, f, A, B)
        if tw is None:
            raise ValueError("no consistent twist assignment exists for these entries")
        s = tw[0] if s is None else s
        t = tw[1] if t is None else t
    mf = MatrixFactorization(ring, f, A, B, tuple(s), tuple(t))
    if validate:
        require_valid(mf)
    return mf


def empty_mf(ring: PolyRing, f: Polynomial) -> MatrixFactorization:
    z = PolyMatrix(ring, [], cols=0)
    return MatrixFactorization(ring, f, z, z, (), ())


def trivial_mf(ring: PolyRing, f: Polynomial, s: int = 0) -> MatrixFactorization:
    """The factorization ``(1, f)``; its cokernel is zero."""
    one = PolyMatrix(ring, [[ring.one()]])
    return MatrixFactorization(ring, f, one, PolyMatrix(ring, [[f]]), (s,), (s,))


def free_mf(ring: PolyRing, f: Polynomial, s: int = 0) -> MatrixFactorization:
    """The factorization ``(f, 1)`` presenting ``R(-s)``."""
    e = f.homogeneous_degree()
    return MatrixFactorization(ring, f, PolyMatrix(ring, [[f]]), PolyMatrix(ring, [[ring.one()]]), (s,), (s + e,))


def suspend(mf: MatrixFactorization) -> MatrixFactorization:
    """``(A, B) -> (B, A)`` presenting ``coker(B)``; twists become ``(t, s + e)``.

    Applying it twice raises every twist by ``e``.
    """
    require_valid(mf)
    e = mf.e
    return MatrixFactorization(mf.ring, mf.f, mf.B, mf.A, mf.t, tuple(x + e for x in mf.s))


def desuspend(mf: MatrixFactorization) -> MatrixFactorization:
    """Inverse of :func:`suspend`."""
    require_valid(mf)
    e = mf.e
    return MatrixFactorization(mf.ring, mf.f, mf.B, mf.A, tuple(x - e for x in mf.t), mf.s)


def _same_ambient(m1: MatrixFactorization, m2: MatrixFactorization) -> None:
    if m1.ring.field != m2.ring.field or m1.ring.n != m2.ring.n:
        raise ValueError("factorizations live over different rings")


def direct_sum(m1: MatrixFactorization, m2: MatrixFactorization) -> MatrixFactorization:
    _same_ambient(m1, m2)
    if m1.f != m2.f:
        raise ValueError(f"cannot add factorizations of {m1.f} and {m2.f}")
    ring = m1.ring
    return MatrixFactorization(
        ring,
        m1.f,
        block_diagonal(ring, m1.A, m2.A),
        block_diagonal(ring, m1.B, m2.B),
        m1.s + m2.s,
        m1.t + m2.t,
    )


def tensor_mf(m1: MatrixFactorization, m2: MatrixFactorization) -> MatrixFactorization:
    """Factorization of ``f1 + f2`` of size ``2 * r1 * r2``.

    With ``I`` identities of the right sizes::

        A = [[A1 x I,  I x A2],      B = [[B1 x I, -I x A2],
             [-I x B2, B1 x I]]           [I x B2,  A1 x I]]

    Rows of ``A`` are indexed by ``F0' x F0''`` then ``F1' x F1''``,
    columns by ``F1' x F0''`` then ``F0' x F1''``.
    """
    _same_ambient(m1, m2)
    if m1.r == 0 or m2.r == 0:
        raise ValueError("tensor product with the empty factorization is undefined")
    ring = m1.ring
    f = m1.f + m2.f
    if f.is_zero():
        raise ValueError("f1 + f2 = 0")
    e1, e2 = m1.f.homogeneous_degree(), m2.f.homogeneous_degree()
    if e1 != e2:
        raise ValueError(f"summands have degrees {e1} and {e2}; f1 + f2 would be inhomogeneous")
    e = e1
    r1, r2 = m1.r, m2.r
    A1, B1, A2, B2 = m1.A, m1.B, m2.A, m2.B
    N = r1 * r2
    z = ring.zero()
    A = [[z] * (2 * N) for _ in range(2 * N)]
    B = [[z] * (2 * N) for _ in range(2 * N)]

    def idx(a, b):
        return a * r2 + b

    for a in range(r1):
        for b in range(r2):
            row = idx(a, b)
            for a2 in range(r1):
                # X (x) I blocks: entry X[a][a2] at ((a, b), (a2, b))
                col = idx(a2, b)
                A[row][col] = A1[a, a2]
                A[N + row][N + col] = B1[a, a2]
                B[row][col] = B1[a, a2]
                B[N + row][N + col] = A1[a, a2]
            for b2 in range(r2):
                # I (x) X blocks: entry X[b][b2] at ((a, b), (a, b2))
                col = idx(a, b2)
                A[row][N + col] = A2[b, b2]
                A[N + row][col] = -B2[b, b2]
                B[row][N + col] = -A2[b, b2]
                B[N + row][col] = B2[b, b2]
    s = [m1.s[a] + m2.s[b] for a in range(r1) for b in range(r2)]
    s += [m1.t[a] + m2.t[b] - e for a in range(r1) for b in range(r2)]
    t = [m1.t[a] + m2.s[b] for a in range(r1) for b in range(r2)]
    t += [m1.s[a] + m2.t[b] for a in range(r1) for b in range(r2)]
    return MatrixFactorization(
        ring, f, PolyMatrix(ring, A, cols=2 * N), PolyMatrix(ring, B, cols=2 * N), tuple(s), tuple(t)
    )


def is_minimal(mf: MatrixFactorization) -> bool:
    """No entry of ``A`` or ``B`` has a nonzero constant term."""
    return mf.A.is_constant_free() and mf.B.is_constant_free()


@dataclass(frozen=True)
class Elimination:
    """One removed unit pivot; ``matrix == "B"`` means a free summand ``R(-s)`` went away."""

    matrix: str
    s: int
    t: int


def _find_unit(X: PolyMatrix):
    for i in range(X.rows):
        for j in range(X.cols):
            if X[i, j].constant_term():
                return i, j
    return None


def _eliminate(X: list, Y: list, i: int, j: int, ring: PolyRing):
    """Clear row ``i`` and column ``j`` of ``X`` around the unit ``X[i][j]``.

    Column operations ``X <- X Q`` are paired with ``Y <- Q^-1 Y`` and row
    operations ``X <- P X`` with ``Y <- Y P^-1`` so ``XY = YX = f I`` is
    kept.  The pivot is homogeneous of degree 0, hence a nonzero constant.
    """
    F = ring.field
    r = len(X)
    c = X[i][j].constant_term()
    cinv = F.inv(c)
    for l in range(r):
        if l == j or not X[i][l]:
            continue
        q = X[i][l].scale(cinv)
        # col_l(X) -= q col_j(X);  row_j(Y) += q row_l(Y)
        for k in range(r):
            if X[k][j]:
                X[k][l] = X[k][l] - q * X[k][j]
        for k in range(r):
            if Y[l][k]:
                Y[j][k] = Y[j][k] + q * Y[l][k]
    for k in range(r):
        if k == i or not X[k][j]:
            continue
        q = X[k][j].scale(cinv)
        # row_k(X) -= q row_i(X);  col_i(Y) += q col_k(Y)
        for l in range(r):
            if X[i][l]:
                X[k][l] = X[k][l] - q * X[i][l]
        for l in range(r):
            if Y[l][k]:
                Y[l][i] = Y[l][i] + q * Y[l][k]
    keep_r = [k for k in range(r) if k != i]
    keep_c = [k for k in range(r) if k != j]
    X2 = [[X[a][b] for b in keep_c] for a in keep_r]
    Y2 = [[Y[a][b] for b in keep_r] for a in keep_c]
    return X2, Y2


def reduce_mf_log(mf: MatrixFactorization):
    """:func:`reduce_mf` plus the list of removed pivots."""
    require_valid(mf)
    ring = mf.ring
    A, B = mf.A.to_lists(), mf.B.to_lists()
    s, t = list(mf.s), list(mf.t)
    log = []
    while True:
        hit = _find_unit(PolyMatrix(ring, A, cols=len(A)))
        if hit is not None:
            i, j = hit
            log.append(Elimination("A", s[i], t[j]))
            A, B = _eliminate(A, B, i, j, ring)
            del s[i], t[j]
            continue
        hit = _find_unit(PolyMatrix(ring, B, cols=len(B)))
        if hit is not None:
            # B[i][j] maps copy j of F0 to copy i of F1.
            i, j = hit
            log.append(Elimination("B", s[j], t[i]))
            B, A = _eliminate(B, A, i, j, ring)
            del s[j], t[i]
            continue
        break
    r = len(A)
    out = MatrixFactorization(ring, mf.f, PolyMatrix(ring, A, cols=r), PolyMatrix(ring, B, cols=r), tuple(s), tuple(t))
    return out, log


def reduce_mf(mf: MatrixFactorization) -> MatrixFactorization:
    """Strip unit entries until the factorization is minimal.

    Units in ``A`` split off ``(1, f)`` blocks (zero cokernel); units in
    ``B`` split off ``(f, 1)`` blocks (free summands), so the result
    presents a module stably isomorphic to ``coker(A)``.  Pivots are taken
    at the smallest ``(row, col)``, ``A`` before ``B``.
    """
    return reduce_mf_log(mf)[0]


# -- cokernel Hilbert function ----------------------------------------------


@dataclass
class HilbertTable:
    lo: int
    hi: int
    dims: dict

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"window [{self.lo}, {self.hi}] is reversed")
        missing = [j for j in range(self.lo, self.hi + 1) if j not in self.dims]
        if missing:
            raise ValueError(f"degrees {missing} missing from Hilbert table")

    def __getitem__(self, j: int) -> int:
        return self.dims[j]

    def get(self, j: int, default=None):
        return self.dims.get(j, default)

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def values(self) -> list:
        return [self.dims[j] for j in self.degrees()]

    def shifted(self, k: int) -> "HilbertTable":
        """Table of ``N(-k)``: value at ``j + k`` is the old value at ``j``."""
        return HilbertTable(self.lo + k, self.hi + k, {j + k: v for j, v in self.dims.items()})

    def __add__(self, other: "HilbertTable") -> "HilbertTable":
        if (self.lo, self.hi) != (other.lo, other.hi):
            raise ValueError("window mismatch")
        return HilbertTable(self.lo, self.hi, {j: self.dims[j] + other.dims[j] for j in self.degrees()})

    def __eq__(self, other):
        if not isinstance(other, HilbertTable):
            return NotImplemented
        return (self.lo, self.hi) == (other.lo, other.hi) and all(
            self.dims[j] == other.dims[j] for j in self.degrees()
        )

    def is_zero(self) -> bool:
        return not any(self.values())

    def total(self) -> int:
        return sum(self.values())

    def restrict(self, lo: int, hi: int) -> "HilbertTable":
        return HilbertTable(lo, hi, {j: self.dims[j] for j in range(lo, hi + 1)})

    def to_json(self) -> dict:
        return {"lo": self.lo, "hi": self.hi, "rows": [[j, self.dims[j]] for j in self.degrees()]}


def free_module_slice(n: int, twists: Sequence[int], j: int) -> list:
    """Monomial basis ``[(copy, exponents)]`` of ``(+) Q(-twist)`` in degree ``j``."""
    return [(i, m) for i, tw in enumerate(twists) for m in monomials_of_degree(n, j - tw)]


def multiplication_images(M: PolyMatrix, src_twists, tgt_twists, j: int) -> tuple:
    """Images of the degree-``j`` monomial basis of the source under polynomial multiplication by ``M``.

    Returns ``(source basis, target basis, images)``.
    """
    n = M.ring.n
    F = M.ring.field
    src = free_module_slice(n, src_twists, j)
    tgt = free_module_slice(n, tgt_twists, j)
    index = {b: i for i, b in enumerate(tgt)}
    images = []
    for k, m in src:
        img: dict = {}
        for i in range(M.rows):
            p = M[i, k]
            for e, c in p.items():
                key = (i, tuple(a + b for a, b in zip(e, m)))
                idx = index[key]
                v = F.add(img.get(idx, F.zero()), c)
                if v:
                    img[idx] = v
                else:
                    img.pop(idx)
        images.append(img)
    return src, tgt, images


def cokernel_hilbert(mf: MatrixFactorization, lo: int, hi: int) -> HilbertTable:
    """``dim_k M_j`` for ``M = coker(A)`` and ``lo <= j <= hi``."""
    if lo > hi:
        raise ValueError(f"window [{lo}, {hi}] is reversed")
    require_valid(mf)
    F = mf.field
    dims = {}
    for j in range(lo, hi + 1):
        _, tgt, images = multiplication_images(mf.A, mf.t, mf.s, j)
        dims[j] = len(tgt) - linalg.rank(images, F)
    return HilbertTable(lo, hi, dims)
