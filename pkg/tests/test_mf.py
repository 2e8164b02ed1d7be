import pytest
import sympy

from stablelc import (
    QQ,
    GF,
    HilbertTable,
    InvalidFactorization,
    PolyMatrix,
    PolyRing,
    cokernel_hilbert,
    desuspend,
    direct_sum,
    free_mf,
    is_minimal,
    make_mf,
    reduce_mf,
    suspend,
    tensor_mf,
    trivial_mf,
    validate_mf,
)
from stablelc.mf import MatrixFactorization, empty_mf, reduce_mf_log
from stablelc.polynomial import monomials_of_degree
from stablelc.verification import InstanceSpec, generate_instance


R1 = PolyRing(QQ, ("x",))
R2 = PolyRing(QQ, ("x", "y"))


def one_by_one(ring, a, b):
    pa, pb = ring.parse(a), ring.parse(b)
    return make_mf(ring, pa * pb, [[pa]], [[pb]])


def test_matrix_products():
    x, y = R2.gens()
    X = PolyMatrix(R2, [[x]])
    assert (X @ PolyMatrix(R2, [[y]])) == PolyMatrix(R2, [[x * y]])
    M = PolyMatrix.from_strings(R2, [["x", "y"], ["0", "x"]])
    N = PolyMatrix.from_strings(R2, [["x", "-y"], ["0", "x"]])
    assert M @ PolyMatrix.identity(R2, 2) == M
    assert M @ N == PolyMatrix.from_strings(R2, [["x^2", "0"], ["0", "x^2"]])
    with pytest.raises(ValueError):
        M @ PolyMatrix(R2, [[x]])


def test_validate_examples(x2_k, xy_rx):
    for mf in (x2_k, xy_rx):
        rep = validate_mf(mf)
        assert rep.valid and rep.minimal


def test_validate_rejects_wrong_f():
    bad = MatrixFactorization(R2, R2.parse("x*y"), PolyMatrix(R2, [[R2.var(0)]]), PolyMatrix(R2, [[R2.var(0)]]), (0,), (1,))
    rep = validate_mf(bad)
    assert not rep.valid
    assert any(f.condition == "AB=fI" for f in rep.failures)
    with pytest.raises(InvalidFactorization):
        make_mf(R2, "x*y", [["x"]], [["x"]])


def test_validate_rejects_bad_twists(xy_rx):
    bad = MatrixFactorization(R2, xy_rx.f, xy_rx.A, xy_rx.B, (0,), (2,))
    assert not validate_mf(bad).valid


def test_validate_rejects_unit_and_zero_f():
    for f in ("1", "0", "x + y^2"):
        bad = MatrixFactorization(R2, R2.parse(f), PolyMatrix(R2, [[R2.one()]]), PolyMatrix(R2, [[R2.parse(f)]]), (0,), (0,))
        assert not validate_mf(bad).valid


def test_suspend_examples(x2_k, xy_rx):
    sx = suspend(x2_k)
    assert sx.A == x2_k.A and sx.B == x2_k.B
    assert sx.s == (1,) and sx.t == (2,)
    sy = suspend(xy_rx)
    assert sy.A == PolyMatrix(R2, [[R2.var(1)]]) and sy.B == PolyMatrix(R2, [[R2.var(0)]])
    assert validate_mf(sy).valid
    assert suspend(suspend(xy_rx)) == xy_rx.shifted(2)
    assert desuspend(suspend(xy_rx)) == xy_rx


def test_direct_sum(xy_rx):
    d = direct_sum(xy_rx, xy_rx)
    assert d.r == 2 and validate_mf(d).valid
    assert d.A == PolyMatrix.from_strings(R2, [["x", "0"], ["0", "x"]])
    assert direct_sum(xy_rx, empty_mf(R2, xy_rx.f)) == xy_rx
    other = one_by_one(R2, "x", "x")
    with pytest.raises(ValueError):
        direct_sum(xy_rx, other)


def test_tensor_examples():
    t = tensor_mf(one_by_one(R2, "x", "x"), one_by_one(R2, "y", "y"))
    assert t.r == 2 and t.f == R2.parse("x^2 + y^2")
    assert validate_mf(t).valid and is_minimal(t)
    t3 = tensor_mf(one_by_one(R2, "x", "x^2"), one_by_one(R2, "y", "y^2"))
    assert t3.f == R2.parse("x^3 + y^3") and validate_mf(t3).valid and is_minimal(t3)
    with pytest.raises(ValueError):
        tensor_mf(one_by_one(R2, "x", "x"), empty_mf(R2, R2.parse("y^2")))
    with pytest.raises(ValueError):
        tensor_mf(one_by_one(R2, "x", "x"), one_by_one(R2, "x", "-x"))


def test_reduce_examples(xy_rx):
    f = xy_rx.f
    assert reduce_mf(trivial_mf(R2, f)).r == 0
    assert not is_minimal(trivial_mf(R2, f))
    assert reduce_mf(xy_rx) == xy_rx
    padded = direct_sum(xy_rx, trivial_mf(R2, f, 3))
    assert reduce_mf(padded) == xy_rx
    padded = direct_sum(trivial_mf(R2, f, 1), direct_sum(free_mf(R2, f, 2), xy_rx))
    red, log = reduce_mf_log(padded)
    assert red == xy_rx
    assert [x.matrix for x in log] == ["A", "B"]


def test_reduce_removes_entangled_units():
    # Mix a (1, f) block into xy_rx by a change of basis; reduction must undo it.
    f = R2.parse("x*y")
    A = PolyMatrix.from_strings(R2, [["x", "x"], ["0", "1"]])
    B = PolyMatrix.from_strings(R2, [["y", "-x*y"], ["0", "x*y"]])
    mf = make_mf(R2, f, A, B)
    red = reduce_mf(mf)
    assert red.r == 1 and is_minimal(red) and validate_mf(red).valid
    assert cokernel_hilbert(red, 0, 6) == cokernel_hilbert(mf, 0, 6)


def test_cokernel_hilbert_examples(x2_k, xy_rx):
    h = cokernel_hilbert(x2_k, -2, 4)
    assert h.values() == [0, 0, 1, 0, 0, 0, 0]
    assert cokernel_hilbert(xy_rx, 0, 10).values() == [1] * 11
    with pytest.raises(ValueError):
        cokernel_hilbert(xy_rx, 3, 2)


def dense_cokernel_dims(mf, lo, hi):
    """Independent oracle: expand with sympy and take dense ranks."""
    syms = sympy.symbols(mf.ring.names)
    entries = [[sympy.sympify(mf.A[i, k].to_str()) for k in range(mf.r)] for i in range(mf.r)]
    out = []
    n = mf.n
    for j in range(lo, hi + 1):
        rows = [(i, m) for i in range(mf.r) for m in monomials_of_degree(n, j - mf.s[i])]
        cols = [(k, m) for k in range(mf.r) for m in monomials_of_degree(n, j - mf.t[k])]
        if not rows:
            out.append(0)
            continue
        index = {b: a for a, b in enumerate(rows)}
        mat = sympy.zeros(len(rows), max(len(cols), 1))
        for c, (k, m) in enumerate(cols):
            mono = sympy.Mul(*[v**a for v, a in zip(syms, m)])
            for i in range(mf.r):
                prod = sympy.Poly(sympy.expand(entries[i][k] * mono), *syms)
                for exps, coef in prod.terms():
                    if coef:
                        mat[index[(i, tuple(exps))], c] = coef
        out.append(len(rows) - mat.rank())
    return out


@pytest.mark.parametrize(
    "factors",
    [
        (("x", "x"), ("y", "y")),
        (("x", "x^2"), ("y", "y^2")),
        (("x", "y"), ("x + y", "x - y")),
        (("x", "x*y"), ("y^2", "x")),
    ],
)
def test_cokernel_hilbert_matches_dense_oracle(factors):
    mf = generate_instance(InstanceSpec("tensor", factors=factors))
    assert cokernel_hilbert(mf, -1, 6).values() == dense_cokernel_dims(mf, -1, 6)


def test_hilbert_table_shift():
    h = HilbertTable(0, 2, {0: 1, 1: 2, 2: 3})
    g = h.shifted(2)
    assert (g.lo, g.hi) == (2, 4) and g[2] == 1 and g[4] == 3
    with pytest.raises(ValueError):
        HilbertTable(0, 1, {0: 1})


def test_infers_twists_from_entries():
    mf = make_mf(R2, "x^2*y", [["x^2"]], [["y"]])
    assert mf.s == (0,) and mf.t == (2,)
    ring = PolyRing(GF(5), ("x", "y"))
    mf = make_mf(ring, "x^2 + y^2", [["x", "y"], ["-y", "x"]], [["x", "-y"], ["y", "x"]])
    assert validate_mf(mf).valid
