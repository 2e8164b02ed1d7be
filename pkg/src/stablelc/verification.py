"""Batch property suites over fixed and seeded random factorizations.

Every suite returns a :class:`~stablelc.report.VerifyReport`; identical
``(suite, instance, window)`` inputs give identical JSON reports.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Sequence

from sympy import GF as SymGF, QQ as SymQQ
from sympy.polys.matrices import DomainMatrix

from .fields import Field, GF, QQ
from .mf import (
    InvalidFactorization,
    MatrixFactorization,
    cokernel_hilbert,
    direct_sum,
    free_mf,
    is_minimal,
    make_mf,
    reduce_mf,
    reduce_mf_log,
    require_valid,
    tensor_mf,
    trivial_mf,
    validate_mf,
)
from .matrix import PolyMatrix
from .polynomial import PolyRing, Polynomial, monomials_of_degree
from .report import VerifyReport
from . import inverse_system as inv
from .stable import (
    NonMinimalInput,
    coincide_check,
    gamma_stab_max,
    kernel_position,
    periodic_complex_check,
    slc_via_syzygy,
    stable_equiv,
    stable_shift,
)

SUITES = (
    "validate",
    "minimality",
    "periodicity",
    "additivity",
    "triviality",
    "acyclicity",
    "duality_oracle",
    "syzygy_formula",
    "coincide",
    "radical_normalizer",
)

DEFAULT_VARS = ("x", "y", "z", "w")


class UnknownSuite(ValueError):
    pass


@dataclass(frozen=True)
class InstanceSpec:
    """How to obtain a factorization.

    ``recipe`` is one of ``"file"`` (``path``), ``"tensor"`` (``factors``: list
    of ``(a, b)`` expression pairs, tensored in order), ``"sum"`` (``parts``:
    list of InstanceSpec with the same ``f``) or ``"random"`` (seeded).
    """

    recipe: str
    seed: int = 0
    vars: tuple = ("x", "y")
    field: str = "QQ"
    factors: tuple = ()
    parts: tuple = ()
    path: str | None = None
    max_n: int = 3
    max_r: int = 8
    max_e: int = 4

    def describe(self) -> str:
        if self.recipe == "file":
            return f"file:{self.path}"
        if self.recipe == "tensor":
            inner = " (x) ".join(f"({a}, {b})" for a, b in self.factors)
            return f"tensor[{inner}] over {self.field}"
        if self.recipe == "sum":
            return "sum[" + ", ".join(p.describe() for p in self.parts) + "]"
        return f"random(seed={self.seed}, n<={self.max_n}, r<={self.max_r}, e<={self.max_e}, {self.field})"


def _field(text: str) -> Field:
    from .fields import parse_field

    return parse_field(text)


def _one_by_one(ring: PolyRing, a: str | Polynomial, b: str | Polynomial) -> MatrixFactorization:
    pa = ring.parse(a) if isinstance(a, str) else a
    pb = ring.parse(b) if isinstance(b, str) else b
    return make_mf(ring, pa * pb, PolyMatrix(ring, [[pa]]), PolyMatrix(ring, [[pb]]))


def _tensor_chain(blocks: list) -> MatrixFactorization:
    mf = blocks[0]
    for b in blocks[1:]:
        mf = tensor_mf(mf, b)
    return mf


def _random_linear(ring: PolyRing, rng: random.Random) -> Polynomial:
    # Mostly variables, sometimes a two-term form, keeps entries sparse.
    n = ring.n
    if n == 1 or rng.random() < 0.6:
        return ring.var(rng.randrange(n))
    i, j = rng.sample(range(n), 2)
    c = rng.choice([1, -1, 2])
    return ring.var(i) + ring.var(j).scale(c)


def _random_instance(spec: InstanceSpec) -> MatrixFactorization:
    rng = random.Random(spec.seed)
    F = _field(spec.field)
    for _ in range(50):
        n = rng.randint(1, spec.max_n)
        ring = PolyRing(F, DEFAULT_VARS[:n])
        e = rng.randint(2, spec.max_e)
        max_blocks = 1
        while 2 ** max_blocks <= spec.max_r:
            max_blocks += 1
        k = rng.randint(1, max(1, min(max_blocks, 4)))
        factors = [[_random_linear(ring, rng) for _ in range(e)] for _ in range(k)]

        def build(splits):
            blocks = []
            for fs, a in zip(factors, splits):
                pa, pb = ring.one(), ring.one()
                for x in fs[:a]:
                    pa = pa * x
                for x in fs[a:]:
                    pb = pb * x
                blocks.append(make_mf(ring, pa * pb, PolyMatrix(ring, [[pa]]), PolyMatrix(ring, [[pb]])))
            return _tensor_chain(blocks)

        try:
            mf = build([rng.randint(1, e - 1) for _ in range(k)])
        except ValueError:
            continue  # f1 + f2 = 0 somewhere in the chain
        if mf.f.is_zero():
            continue
        if 2 * mf.r <= spec.max_r and rng.random() < 0.5:
            other = build([rng.randint(1, e - 1) for _ in range(k)])
            if other.f == mf.f:
                mf = direct_sum(mf, other)
        return reduce_mf(mf)
    raise ValueError(f"seed {spec.seed}: could not produce a nonzero f after 50 attempts")


def generate_instance(spec: InstanceSpec) -> MatrixFactorization:
    """Deterministically build the factorization described by ``spec``."""
    if spec.recipe == "file":
        from .mfio import load_mf

        return load_mf(spec.path)
    if spec.recipe == "tensor":
        if not spec.factors:
            raise ValueError("empty tensor recipe")
        ring = PolyRing(_field(spec.field), spec.vars)
        return reduce_mf(_tensor_chain([_one_by_one(ring, a, b) for a, b in spec.factors]))
    if spec.recipe == "sum":
        if not spec.parts:
            raise ValueError("empty sum recipe")
        mfs = [generate_instance(p) for p in spec.parts]
        out = mfs[0]
        for m in mfs[1:]:
            out = direct_sum(out, m)
        return out
    if spec.recipe == "random":
        return _random_instance(spec)
    raise ValueError(f"unknown recipe {spec.recipe!r}")


def radical_normalizer(gens: Sequence, vars: Sequence[str]) -> str:
    """``"m"`` iff the monomial ideal has radical ``(x1, ..., xn)``, else ``"unsupported"``.

    The radical of a monomial ideal is generated by the squarefree supports
    of its generators, so it is the maximal ideal exactly when every
    variable has a pure power among the generators.
    """
    ring = PolyRing(QQ, tuple(vars))
    supports = []
    for g in gens:
        p = ring.parse(g) if isinstance(g, str) else g
        if len(p) != 1:
            raise ValueError(f"{g} is not a monomial")
        (exps,) = p.terms.keys()
        supports.append(frozenset(i for i, a in enumerate(exps) if a))
    if any(not s for s in supports):
        return "unsupported"  # unit ideal
    pure = {next(iter(s)) for s in supports if len(s) == 1}
    return "m" if pure == set(range(ring.n)) else "unsupported"


# -- independent polynomial-side oracle ------------------------------------


def transpose_cokernel_dim(M: PolyMatrix, src_twists, tgt_twists, degree: int) -> int:
    """``dim`` of ``coker(M^T : (+)_i Q(tgt_i) -> (+)_k Q(src_k))`` in ``degree``.

    Built from polynomial multiplication and ranked with sympy, with no use
    of the inverse-system code.  By graded Matlis duality this equals the
    dimension of ``ker(M)`` on ``E^r`` in degree ``-degree - n``.
    """
    ring = M.ring
    n = ring.n
    cols_basis = [(i, m) for i, tw in enumerate(tgt_twists) for m in monomials_of_degree(n, degree + tw)]
    rows_basis = [(k, m) for k, tw in enumerate(src_twists) for m in monomials_of_degree(n, degree + tw)]
    if not rows_basis:
        return 0
    if not cols_basis:
        return len(rows_basis)
    index = {b: i for i, b in enumerate(rows_basis)}
    F = ring.field
    dom = SymGF(F.p) if F.p else SymQQ
    data: dict = {}
    for c, (i, m) in enumerate(cols_basis):
        mono = ring.monomial(m)
        for k in range(M.cols):
            entry = M[i, k]  # (M^T)[k][i]
            if not entry:
                continue
            for e, v in (entry * mono).items():
                r = index[(k, e)]
                data.setdefault(r, {})[c] = dom(v) if F.p else dom(v.numerator, v.denominator)
    dm = DomainMatrix(data, (len(rows_basis), len(cols_basis)), dom)
    return len(rows_basis) - dm.rank()


# -- suites ------------------------------------------------------------------


def _gamma_pairs(h1, h2):
    return [(j, h1[j], h2[j]) for j in h1.degrees()]


def _suite_validate(mf, lo, hi, rep):
    vr = validate_mf(mf)
    rep.add("validate_mf", vr.valid, None, "; ".join(vr.messages()))
    if vr.valid:
        rep.extra["minimal"] = vr.minimal


def _suite_minimality(mf, lo, hi, rep):
    red, log = reduce_mf_log(mf)
    rep.add("reduced_is_valid", validate_mf(red).valid)
    rep.add("reduced_is_minimal", is_minimal(red))
    rep.add("idempotent", reduce_mf(red) == red)
    # Units in B strip free summands R(-s); add their Hilbert functions back.
    h_in = cokernel_hilbert(mf, lo, hi)
    h_out = cokernel_hilbert(red, lo, hi)
    ring = mf.ring
    for el in log:
        if el.matrix == "B":
            h_out = h_out + cokernel_hilbert(free_mf(ring, mf.f, el.s), lo, hi)
    for j in range(lo, hi + 1):
        rep.add("coker_hilbert_preserved", h_in[j] == h_out[j], j, f"{h_in[j]} vs {h_out[j]}")


def _suite_periodicity(mf, lo, hi, rep):
    e = mf.e
    g = gamma_stab_max(mf, lo, hi).hilbert
    g2 = gamma_stab_max(stable_shift(mf, 2), lo + e, hi + e).hilbert
    want = g.shifted(e)
    for j in want.degrees():
        rep.add("gamma_2periodic", g2[j] == want[j], j, f"{g2[j]} vs {want[j]}")
    c = cokernel_hilbert(mf, lo, hi)
    c2 = cokernel_hilbert(stable_shift(mf, 2), lo + e, hi + e)
    wc = c.shifted(e)
    for j in wc.degrees():
        rep.add("coker_2periodic", c2[j] == wc[j], j, f"{c2[j]} vs {wc[j]}")


def _suite_additivity(mf, lo, hi, rep):
    other = stable_shift(mf, 1)
    total = gamma_stab_max(direct_sum(mf, other), lo, hi).hilbert
    parts = gamma_stab_max(mf, lo, hi).hilbert + gamma_stab_max(other, lo, hi).hilbert
    for j in range(lo, hi + 1):
        rep.add("gamma_additive", total[j] == parts[j], j, f"{total[j]} vs {parts[j]}")
    ct = cokernel_hilbert(direct_sum(mf, other), lo, hi)
    cp = cokernel_hilbert(mf, lo, hi) + cokernel_hilbert(other, lo, hi)
    for j in range(lo, hi + 1):
        rep.add("coker_additive", ct[j] == cp[j], j, f"{ct[j]} vs {cp[j]}")


def _suite_triviality(mf, lo, hi, rep):
    ring, f = mf.ring, mf.f
    for label, block in (("(1,f)", trivial_mf(ring, f)), ("(f,1)", free_mf(ring, f))):
        g = gamma_stab_max(block, lo, hi).hilbert
        rep.add(f"vanishes_on_{label}", g.is_zero(), None, str(g.values()))
    base = gamma_stab_max(mf, lo, hi).hilbert
    padded = direct_sum(direct_sum(mf, trivial_mf(ring, f, 1)), free_mf(ring, f, 2))
    g = gamma_stab_max(padded, lo, hi).hilbert
    for j in range(lo, hi + 1):
        rep.add("trivial_blocks_invisible", g[j] == base[j], j, f"{g[j]} vs {base[j]}")
    if reduce_mf(mf).r == 0:
        rep.add("instance_vanishes", base.is_zero(), None, str(base.values()))
    rep.extra["hilbert"] = base.values()


def _suite_acyclicity(mf, lo, hi, rep):
    sub = periodic_complex_check(mf, lo, hi)
    rep.checks.extend(sub.checks)


def _suite_duality(mf, lo, hi, rep):
    mf = reduce_mf(mf) if not is_minimal(mf) else mf
    if mf.r == 0:
        rep.add("empty", True)
        return
    n, e = mf.n, mf.e
    which, M, src, tgt, _ = kernel_position(mf)
    other = ("B", mf.B) if which == "A" else ("A", mf.A)
    # The kernel position and the next one along the periodic sequence.
    pairs = [(which, M, src, tgt), (other[0], other[1], tgt, [x - e for x in src])]
    g = gamma_stab_max(mf, lo, hi).hilbert
    for name, X, s_tw, t_tw in pairs:
        for j in range(lo, hi + 1):
            lhs = inv.matrix_kernel_dim(X, s_tw, j, t_tw)
            rhs = transpose_cokernel_dim(X, s_tw, t_tw, -j - n)
            rep.add(f"ker_{name}_vs_transpose_coker", lhs == rhs, j, f"{lhs} vs {rhs}")
    for j in range(lo, hi + 1):
        rhs = transpose_cokernel_dim(M, src, tgt, -j - n)
        rep.add("gamma_vs_oracle", g[j] == rhs, j, f"{g[j]} vs {rhs}")


def _suite_syzygy(mf, lo, hi, rep):
    mf = reduce_mf(mf)
    g = gamma_stab_max(mf, lo, hi)
    s = slc_via_syzygy(mf, lo, hi)
    cmp = stable_equiv(g, s)
    rep.add("stable_equiv", cmp.verdict, None, f"shift {cmp.shift}; {cmp.note}")
    rep.extra["shift"] = cmp.shift


def _suite_coincide(mf, lo, hi, rep):
    sub = coincide_check(mf, lo, hi)
    rep.checks.extend(sub.checks)
    rep.extra.update(sub.extra)


def _suite_radical(mf, lo, hi, rep):
    names = mf.ring.names
    n = len(names)
    powers = [f"{v}^{k + 1}" for k, v in enumerate(names)]
    mixed = powers + ["*".join(names)] if n > 1 else powers
    rep.add("pure_powers_are_m", radical_normalizer(powers, names) == "m")
    rep.add("extra_generators_keep_m", radical_normalizer(mixed, names) == "m")
    rep.add("maximal_ideal_is_m", radical_normalizer(list(names), names) == "m")
    if n > 1:
        rep.add("missing_variable_unsupported", radical_normalizer(powers[1:] + ["*".join(names)], names) == "unsupported")
    rep.add("unit_ideal_unsupported", radical_normalizer(["1"], names) == "unsupported")
    # Same radical class, same normalized support, literally the same computation.
    g1 = gamma_stab_max(mf, lo, hi).hilbert if radical_normalizer(powers, names) == "m" else None
    g2 = gamma_stab_max(mf, lo, hi).hilbert if radical_normalizer(mixed, names) == "m" else None
    rep.add("radical_invariance", g1 is not None and g1 == g2)


_RUNNERS = {
    "validate": _suite_validate,
    "minimality": _suite_minimality,
    "periodicity": _suite_periodicity,
    "additivity": _suite_additivity,
    "triviality": _suite_triviality,
    "acyclicity": _suite_acyclicity,
    "duality_oracle": _suite_duality,
    "syzygy_formula": _suite_syzygy,
    "coincide": _suite_coincide,
    "radical_normalizer": _suite_radical,
}


def run_suite_on(suite: str, mf: MatrixFactorization, lo: int, hi: int, label: str | None = None) -> VerifyReport:
    if suite not in _RUNNERS:
        raise UnknownSuite(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if lo > hi:
        raise ValueError(f"empty window [{lo}, {hi}]")
    rep = VerifyReport(suite, label or mf.describe(), (lo, hi))
    t0 = time.perf_counter()
    if suite != "validate":
        require_valid(mf)
    try:
        _RUNNERS[suite](mf, lo, hi, rep)
    except NonMinimalInput as exc:
        rep.add("minimal_input", False, None, str(exc))
    rep.wall_time = time.perf_counter() - t0
    return rep


def run_suite(suite: str, instance: InstanceSpec, lo: int, hi: int) -> VerifyReport:
    """Resolve ``instance`` and run the named suite on it."""
    if suite not in _RUNNERS:
        raise UnknownSuite(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    mf = generate_instance(instance)
    return run_suite_on(suite, mf, lo, hi, instance.describe())


def corpus(count: int = 20, max_n: int = 3, max_r: int = 8, max_e: int = 4, field: str = "GF(32003)", start: int = 0):
    """Seeded random instance specs used by the batch suites."""
    return [
        InstanceSpec("random", seed=start + i, max_n=max_n, max_r=max_r, max_e=max_e, field=field)
        for i in range(count)
    ]
