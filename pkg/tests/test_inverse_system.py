import random

import pytest
from hypothesis import given, settings, strategies as st

from stablelc import GF, QQ, PolyMatrix, PolyRing
from stablelc import inverse_system as inv
from stablelc.verification import transpose_cokernel_dim


R1 = PolyRing(QQ, ("x",))
R2 = PolyRing(QQ, ("x", "y"))


def test_e_dim_examples():
    assert [inv.e_dim(1, j) for j in range(-4, 2)] == [1, 1, 1, 1, 0, 0]
    assert inv.e_dim(2, -2) == 1
    assert inv.e_dim(2, -4) == 3
    assert sorted(inv.dual_monomials(2, -4)) == [(-3, -1), (-2, -2), (-1, -3)]
    assert inv.e_dim(2, -1, twist=1) == 1


def test_contraction_rule():
    x = R1.var(0)
    assert inv.contract(x, (-2,)) == {(-1,): 1}
    assert inv.contract(x, (-1,)) == {}
    assert inv.contract(R2.parse("x + y"), (-1, -2)) == {(-1, -1): 1}


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.tuples(st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-3, 3)), max_size=4),
    st.lists(st.tuples(st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-3, 3)), max_size=4),
    st.tuples(st.integers(-5, -1), st.integers(-5, -1)),
)
def test_module_axioms(ps, qs, a):
    p = sum((R2.monomial(e, c) for e, c in ps), R2.zero())
    q = sum((R2.monomial(e, c) for e, c in qs), R2.zero())

    def act(poly, vec):
        out = {}
        for b, c in vec.items():
            for e, v in inv.contract(poly, b).items():
                out[e] = out.get(e, 0) + c * v
        return {k: v for k, v in out.items() if v}

    start = {a: 1}
    assert act(p * q, start) == act(p, act(q, start))
    assert act(p + q, start) == {k: v for k, v in _add(act(p, start), act(q, start)).items() if v}
    assert act(R2.one(), start) == start


def _add(u, v):
    out = dict(u)
    for k, c in v.items():
        out[k] = out.get(k, 0) + c
    return out


def test_kernel_of_x_in_one_variable():
    M = PolyMatrix(R1, [[R1.var(0)]])
    dims = [inv.matrix_kernel_dim(M, [0], j, [-1]) for j in range(-5, 1)]
    assert dims == [0, 0, 0, 0, 1, 0]
    sl = inv.matrix_kernel_slice(M, [0], -1, [-1])
    assert sl.vector_strings() == ["x^-1"]


def test_kernel_of_y_in_two_variables():
    M = PolyMatrix(R2, [[R2.var(1)]])
    dims = [inv.matrix_kernel_dim(M, [0], j, [-1]) for j in range(-10, 1)]
    assert dims == [1] * 9 + [0, 0]


def test_kernel_of_y_untwisted_basis():
    M = PolyMatrix(R2, [[R2.var(1)]])
    for i in range(1, 6):
        sl = inv.matrix_kernel_slice(M, [0], -i - 1, [-1])
        expect = "x^-1*y^-1" if i == 1 else f"x^-{i}*y^-1"
        assert sl.vector_strings() == [expect]


def test_invertible_constant_has_no_kernel():
    M = PolyMatrix.from_strings(R2, [["2", "1"], ["1", "1"]])
    assert all(inv.matrix_kernel_dim(M, [0, 0], j, [0, 0]) == 0 for j in range(-6, 1))


def test_cokernels_on_E():
    x = PolyMatrix(R1, [[R1.var(0)]])
    assert all(inv.matrix_cokernel_dim(x, [1], [0], j) == 0 for j in range(-6, 1))
    ident = PolyMatrix.identity(R2, 2)
    assert all(inv.matrix_cokernel_dim(ident, [0, 3], [0, 3], j) == 0 for j in range(-6, 1))


def test_cokernel_of_x_on_E_R_for_xy():
    f = R2.parse("x*y")
    M = PolyMatrix(R2, [[R2.var(0)]])
    dims = {j: inv.matrix_cokernel_dim(M, [1], [0], j, f=f) for j in range(-8, -1)}
    assert dims[-2] == 0
    assert all(dims[j] == 1 for j in range(-8, -2))


def test_annihilator_examples():
    f = R2.parse("x*y")
    assert inv.annihilator_slice(f, -2).dim == 1
    for j in range(-9, -2):
        sl = inv.annihilator_slice(f, j)
        assert sl.dim == 2
        supports = sorted(sl.basis[next(iter(r))][1] for r in sl.rows)
        assert all(min(-a, -b) == 1 for a, b in supports)
    g = R1.parse("x^2")
    strings = [s for j in range(-5, 0) for s in inv.annihilator_slice(g, j).vector_strings()]
    assert sorted(strings) == ["x^-1", "x^-2"]
    one = R2.one()
    assert all(inv.annihilator_slice(one, j).dim == 0 for j in range(-6, 0))


def test_annihilator_matches_brute_force_for_non_monomial_f():
    ring = PolyRing(GF(101), ("x", "y", "z"))
    f = ring.parse("x^2 + y*z + 3*z^2")
    for tw in ((0,), (0, 2), (1, 1)):
        for j in range(-9, 0):
            vecs = inv.annihilator_vectors(f, tw, j)
            basis = inv.slice_basis(3, tw, j)
            # E_R in raw degree d has dimension dim Q_{-d-3} - dim Q_{-d-3-2}.
            from math import comb

            expect = 0
            for t in tw:
                m = -(j - t) - 3
                expect += (comb(m + 2, 2) if m >= 0 else 0) - (comb(m, 2) if m - 2 >= 0 else 0)
            assert len(vecs) == expect
            for v in vecs:
                for copy in range(len(tw)):
                    acc = {}
                    for idx, c in v.items():
                        cc, a = basis[idx]
                        if cc != copy:
                            continue
                        for e, w in inv.contract(f, a).items():
                            acc[e] = (acc.get(e, 0) + c * w) % 101
                    assert not any(acc.values())


def _random_matrix(ring, rng, src, tgt):
    from stablelc.polynomial import monomials_of_degree

    rows = []
    for i in range(len(tgt)):
        row = []
        for k in range(len(src)):
            d = src[k] - tgt[i]
            p = ring.zero()
            if d >= 0 and rng.random() < 0.8:
                for m in monomials_of_degree(ring.n, d):
                    if rng.random() < 0.5:
                        p = p + ring.monomial(m, rng.randint(-2, 2))
            row.append(p)
        rows.append(row)
    return PolyMatrix(ring, rows, cols=len(src))


@pytest.mark.parametrize("seed", range(8))
def test_duality_and_rank_nullity(seed):
    rng = random.Random(seed)
    ring = PolyRing(GF(31), ("x", "y", "z")[: rng.randint(1, 3)])
    src = [rng.randint(0, 3) for _ in range(rng.randint(1, 3))]
    tgt = [rng.randint(-1, 1) for _ in range(rng.randint(1, 3))]
    M = _random_matrix(ring, rng, src, tgt)
    n = ring.n
    for j in range(-10, 1):
        kd = inv.matrix_kernel_dim(M, src, j, tgt)
        assert kd == transpose_cokernel_dim(M, src, tgt, -j - n)
        s_basis, _, images = inv.map_slice(M, src, tgt, j)
        from stablelc import linalg

        rk = linalg.rank(images, ring.field)
        assert kd + rk == len(s_basis)
        assert inv.matrix_cokernel_dim(M, src, tgt, j) == len(inv.slice_basis(n, tgt, j)) - rk


def test_degree_errors():
    M = PolyMatrix(R2, [[R2.parse("x + y^2")]])
    with pytest.raises(inv.DegreeError):
        inv.matrix_kernel_dim(M, [2], -3)
    M = PolyMatrix(R2, [[R2.var(0)]])
    with pytest.raises(inv.DegreeError):
        inv.matrix_kernel_dim(M, [3], -3, [0])


def test_slice_json_is_deterministic():
    f = R2.parse("x*y")
    a = inv.annihilator_slice(f, -4).to_json()
    b = inv.annihilator_slice(f, -4).to_json()
    assert a == b and a["dim"] == 2
