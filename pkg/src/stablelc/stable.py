"""Stable and classical local cohomology at the maximal ideal.

For a factorization ``(A, B)`` of ``f`` in ``n`` variables, tensoring with
the injective hull ``E`` gives the 2-periodic sequence of contraction maps
on ``E^r``.  Its kernel in position ``n`` is the stable local cohomology of
``M = coker(A)``: ``ker(A)`` when ``n`` is odd, ``ker(B)`` when ``n`` is
even.  Classical top local cohomology is ``M (x) E_R`` with
``E_R = (0 :_E f)``, i.e. the cokernel of ``A`` acting on ``E_R^r``.

Grading conventions (fixed once, used everywhere):

* ``gamma_stab_max``: position ``p`` of the periodic sequence carries the
  ``F0`` twists lowered by ``p e / 2`` (``p`` even) or the ``F1`` twists
  lowered by ``(p + 1) e / 2`` (``p`` odd), and ``E`` is graded with its
  socle in degree 0, i.e. raw dual-monomial degree plus ``n``.
* ``top_local_cohomology``: ``E_R`` copies carry the ``F0``/``F1`` twists
  raised by ``e``, which is the standard grading of ``H^d_m(R)``.

The offset applied to the factorization twists is stored on every view.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import inverse_system as inv
from . import linalg
from .mf import (
    HilbertTable,
    MatrixFactorization,
    desuspend,
    is_minimal,
    reduce_mf,
    require_valid,
    suspend,
)
from .report import VerifyReport


class NonMinimalInput(ValueError):
    pass


@dataclass
class GradedModuleView:
    hilbert: HilbertTable
    tag: str
    twist_offset: int
    slices: dict | None = None
    meta: dict = field(default_factory=dict)

    def to_json(self, with_basis: bool = False) -> dict:
        out = {
            "construction": self.tag,
            "twist_offset": self.twist_offset,
            "hilbert": self.hilbert.to_json(),
        }
        if self.meta:
            out["meta"] = self.meta
        if with_basis and self.slices is not None:
            out["basis"] = [self.slices[j].to_json() for j in sorted(self.slices)]
        return out


def _check_window(lo: int, hi: int) -> None:
    if lo > hi:
        raise ValueError(f"empty window [{lo}, {hi}]")


def kernel_position(mf: MatrixFactorization):
    """Matrix and (source, target) twists whose kernel is the stable local cohomology."""
    n, e = mf.n, mf.e
    if n % 2:
        shift = n - (n + 1) * e // 2
        return "A", mf.A, [x + shift for x in mf.t], [x + shift for x in mf.s], shift
    shift = n - n * e // 2
    return "B", mf.B, [x + shift for x in mf.s], [x + shift - e for x in mf.t], shift


def gamma_stab_max(mf: MatrixFactorization, lo: int, hi: int, basis: bool = False) -> GradedModuleView:
    """Stable local cohomology of ``coker(A)`` at the maximal ideal, per degree."""
    _check_window(lo, hi)
    require_valid(mf)
    reduced = False
    if not is_minimal(mf):
        mf = reduce_mf(mf)
        reduced = True
    meta = {"reduced_first": reduced, "r": mf.r}
    if mf.r == 0:
        dims = {j: 0 for j in range(lo, hi + 1)}
        slices = None
        if basis:
            slices = {j: inv.DualSlice(j, (), [], "kernel", [], mf.ring.names, mf.field) for j in dims}
        meta["matrix"] = "A" if mf.n % 2 else "B"
        return GradedModuleView(HilbertTable(lo, hi, dims), "gamma_stab_max", 0, slices, meta)
    which, M, src, tgt, shift = kernel_position(mf)
    meta["matrix"] = which
    dims, slices = {}, ({} if basis else None)
    for j in range(lo, hi + 1):
        if basis:
            sl = inv.matrix_kernel_slice(M, src, j, tgt)
            slices[j] = sl
            dims[j] = sl.dim
        else:
            dims[j] = inv.matrix_kernel_dim(M, src, j, tgt)
    return GradedModuleView(HilbertTable(lo, hi, dims), "gamma_stab_max", shift, slices, meta)


def _tensor_with_E_R(mf: MatrixFactorization, lo: int, hi: int, basis: bool, tag: str) -> GradedModuleView:
    e = mf.e
    src = [x + e for x in mf.t]
    tgt = [x + e for x in mf.s]
    dims, slices = {}, ({} if basis else None)
    for j in range(lo, hi + 1):
        if basis:
            sl = inv.matrix_cokernel_slice(mf.A, src, tgt, j, mf.f)
            slices[j] = sl
            dims[j] = sl.dim
        else:
            dims[j] = inv.matrix_cokernel_dim(mf.A, src, tgt, j, mf.f)
    return GradedModuleView(HilbertTable(lo, hi, dims), tag, e, slices, {"r": mf.r})


def top_local_cohomology(mf: MatrixFactorization, lo: int, hi: int, basis: bool = False) -> GradedModuleView:
    """``H^d_m(coker A) = coker(A)  (x)  E_R``, per degree."""
    _check_window(lo, hi)
    require_valid(mf)
    return _tensor_with_E_R(mf, lo, hi, basis, "top_local_cohomology")


def stable_shift(mf: MatrixFactorization, i: int) -> MatrixFactorization:
    """``|i|``-fold :func:`suspend` (``i > 0``) or :func:`desuspend` (``i < 0``)."""
    require_valid(mf)
    step = suspend if i > 0 else desuspend
    for _ in range(abs(i)):
        mf = step(mf)
    return mf


def slc_via_syzygy(mf: MatrixFactorization, lo: int, hi: int, basis: bool = False) -> GradedModuleView:
    """Stable local cohomology as the ``d``-th shift of ``M`` tensored with ``E_R`` (``d = n - 1``)."""
    _check_window(lo, hi)
    require_valid(mf)
    if not is_minimal(mf):
        raise NonMinimalInput("slc_via_syzygy needs a minimal factorization; call reduce_mf first")
    d = mf.n - 1
    view = _tensor_with_E_R(stable_shift(mf, d), lo, hi, basis, "slc_via_syzygy")
    view.meta["d"] = d
    return view


def periodic_complex_check(mf: MatrixFactorization, lo: int, hi: int) -> VerifyReport:
    """Exactness of ``... -> E_R^r --A--> E_R^r --B--> E_R^r -> ...`` in every degree of the window.

    Both positions are checked: the composite of consecutive maps must vanish
    on the annihilator slices and ``dim ker == dim im``.
    """
    _check_window(lo, hi)
    require_valid(mf)
    t0 = time.perf_counter()
    rep = VerifyReport("acyclicity", mf.describe(), (lo, hi))
    e, f, F = mf.e, mf.f, mf.field
    # (name, into-position map, its source/target twists, out-of-position map, its source/target twists)
    positions = (
        ("F0", mf.A, [x + e for x in mf.t], [x + e for x in mf.s], mf.B, [x + e for x in mf.s], list(mf.t)),
        ("F1", mf.B, [x + e for x in mf.s], list(mf.t), mf.A, list(mf.t), list(mf.s)),
    )
    composites = {"F0": mf.B @ mf.A, "F1": mf.A @ mf.B}
    for j in range(lo, hi + 1):
        for name, IN, in_src, in_tgt, OUT, out_src, out_tgt in positions:
            if mf.r == 0:
                rep.add(f"exact@{name}", True, j)
                continue
            src, mid, in_images = inv.map_slice(IN, in_src, in_tgt, j)
            _, tgt, out_images = inv.map_slice(OUT, out_src, out_tgt, j)
            src_vecs = inv.annihilator_vectors(f, in_src, j, src)
            mid_vecs = inv.annihilator_vectors(f, out_src, j, mid)
            image = [inv._apply(in_images, v, F) for v in src_vecs]
            _, _, comp_images = inv.map_slice(composites[name], in_src, out_tgt, j)
            composite_zero = all(not inv._apply(comp_images, v, F) for v in src_vecs)
            im_dim = linalg.rank(image, F)
            ker_dim = len(mid_vecs) - linalg.rank([inv._apply(out_images, v, F) for v in mid_vecs], F)
            rep.add(f"composite@{name}", composite_zero, j, "" if composite_zero else "consecutive maps do not compose to 0")
            rep.add(f"exact@{name}", im_dim == ker_dim, j, f"dim ker {ker_dim}, dim im {im_dim}")
    rep.wall_time = time.perf_counter() - t0
    return rep


@dataclass
class StableComparison:
    left: GradedModuleView
    right: GradedModuleView
    shift: int | None
    per_degree: list
    verdict: bool
    note: str = ""

    def to_json(self) -> dict:
        return {
            "left": self.left.tag,
            "right": self.right.tag,
            "shift": self.shift,
            "verdict": "pass" if self.verdict else "fail",
            "note": self.note,
            "per_degree": [{"degree": j, "left": a, "right": b, "ok": ok} for j, a, b, ok in self.per_degree],
        }


def _agrees(h1: HilbertTable, h2: HilbertTable, delta: int):
    """Overlap of ``h1`` with ``h2`` read at ``j + delta``; ``None`` if empty."""
    lo = max(h1.lo, h2.lo - delta)
    hi = min(h1.hi, h2.hi - delta)
    if lo > hi:
        return None
    rows = [(j, h1[j], h2[j + delta]) for j in range(lo, hi + 1)]
    return rows


def stable_equiv(v1: GradedModuleView, v2: GradedModuleView) -> StableComparison:
    """Search the shift ``delta`` with ``v1[j] == v2[j + delta]`` on the window overlap.

    A shift qualifies when the tables agree on the whole overlap and the
    overlap holds a nonzero value.  Among qualifying shifts the one with the
    largest overlap wins; a tie for the largest overlap fails.  When both
    tables vanish identically the comparison passes with shift 0.  This is a
    necessary condition for stable isomorphism, checked on Hilbert functions
    only.
    """
    h1, h2 = v1.hilbert, v2.hilbert
    note = "Hilbert-level check: consistent with stable isomorphism, not a certified isomorphism"
    if h1.is_zero() and h2.is_zero():
        rows = [(j, 0, 0, True) for j in h1.degrees()]
        return StableComparison(v1, v2, 0, rows, True, note + "; both sides vanish")
    if h1.is_zero() or h2.is_zero():
        side = "left" if h1.is_zero() else "right"
        rows = _agrees(h1, h2, 0) or []
        return StableComparison(v1, v2, None, [(j, a, b, a == b) for j, a, b in rows], False, f"{side} side vanishes")
    candidates = []
    for delta in range(h2.lo - h1.hi, h2.hi - h1.lo + 1):
        rows = _agrees(h1, h2, delta)
        if rows is None:
            continue
        if any(a for _, a, _ in rows) and all(a == b for _, a, b in rows):
            candidates.append((delta, rows))
    if not candidates:
        rows = _agrees(h1, h2, 0) or []
        return StableComparison(
            v1, v2, None, [(j, a, b, a == b) for j, a, b in rows], False, "no shift aligns the Hilbert tables"
        )
    best = max(len(rows) for _, rows in candidates)
    top = [(d, rows) for d, rows in candidates if len(rows) == best]
    if len(top) > 1:
        shifts = [d for d, _ in top]
        return StableComparison(v1, v2, None, [], False, f"ambiguous alignment, shifts {shifts} fit equally well")
    delta, rows = top[0]
    return StableComparison(v1, v2, delta, [(j, a, b, True) for j, a, b in rows], True, note)


def coincide_check(mf: MatrixFactorization, lo: int, hi: int) -> VerifyReport:
    """Compare ``H^d_m(M)`` with the stable local cohomology of the ``d``-fold shift of ``M``."""
    _check_window(lo, hi)
    require_valid(mf)
    if not is_minimal(mf):
        raise NonMinimalInput("coincide_check needs a minimal factorization; call reduce_mf first")
    t0 = time.perf_counter()
    d = mf.n - 1
    rep = VerifyReport("coincide", mf.describe(), (lo, hi), extra={"c": d, "t": d, "d": d})
    top = top_local_cohomology(mf, lo, hi)
    stab = gamma_stab_max(stable_shift(mf, d), lo, hi)
    cmp = stable_equiv(top, stab)
    rep.add("stable_equiv", cmp.verdict, None, f"shift {cmp.shift}; {cmp.note}")
    rep.extra["shift"] = cmp.shift
    rep.extra["left"] = top.hilbert.values()
    rep.extra["right"] = stab.hilbert.values()
    rep.wall_time = time.perf_counter() - t0
    return rep
