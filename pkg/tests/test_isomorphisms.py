from fractions import Fraction

import pytest

from magma_tits.exact import Matrix, vec_eq, vec_is_zero
from magma_tits.algebra import check_super_jacobi
from magma_tits.composition import split_cayley, split_quaternion, binarion, ground
from magma_tits.jordan import h3, jordan_super_jvtheta, d2, JordanAlgebra
from magma_tits.structurable import a_of_j, a_of_cubic
from magma_tits.isomorphisms import (
    IsomorphismError, InvolutionHomomorphism, theorem41, theorem61, tqj_maps,
    ak_to_ajv, phi_theorem41, theorem41_basis,
)
from magma_tits.tits import tits
from magma_tits.s4 import coordinate_algebra, s4_on_tits_left


def test_theorem41_h3k():
    T, ca, AJ, hom = theorem41(h3(ground()))
    assert AJ.algebra.n == 2 + 2 * 6
    # Phi carries the exact scales: Phi(D_{v1,u2}) = diag(3, 0)
    img = hom.matrix.column(0)
    assert img[0] == 3 and all(not c for c in img[1:])
    img = hom.matrix.column(1)
    assert img[-1] == 3 and all(not c for c in img[:-1])


def test_theorem41_h3_binarion():
    theorem41(h3(binarion()))


def test_theorem41_degenerate_ground_jordan():
    # J = k: J0 = 0, both sides 4-dimensional
    from magma_tits.algebra import SuperAlgebra
    alg = SuperAlgebra(["1"], {(0, 0): {0: 1}}, name="k")
    J = JordanAlgebra(alg, [Fraction(1)], [Fraction(1)], provenance="custom")
    T, ca, AJ, hom = theorem41(J)
    assert ca.dim == 4 and AJ.algebra.n == 4


def test_theorem41_super_cases():
    theorem41(jordan_super_jvtheta())
    theorem41(d2())


def test_theorem41_negative_control():
    # corrupting one scale factor must break the verification
    J = h3(ground())
    C = split_cayley()
    T = tits(C, J)
    action = s4_on_tits_left(T)
    ca = coordinate_algebra(T.algebra, action, basis=theorem41_basis(T))
    AJ = a_of_j(J)
    hom = phi_theorem41(ca, AJ, J)
    M = hom.matrix.copy()
    M[0, 0] = Fraction(4)  # should be 3
    bad = InvolutionHomomorphism(ca.awi, AJ, M, name="corrupt")
    with pytest.raises(IsomorphismError):
        bad.verify()


def test_theorem61_small_pairs():
    for C, Chat in ((binarion(), binarion()),
                    (ground(), split_quaternion()),
                    (split_quaternion(), binarion())):
        T, ca, TP, hom = theorem61(C, Chat)
        assert ca.dim == C.dim * Chat.dim


def test_theorem61_proof_case_identities():
    """d0(x).d0(y) = -d0(xy)/2 and friends, via the coordinate product."""
    C = split_quaternion()
    Chat = split_quaternion()
    T, ca, TP, hom = theorem61(C, Chat)
    J = T.J
    f = Fraction
    alg = Chat.algebra

    def d0(x):
        e1me2 = [a - b for a, b in zip(J.algebra.e(J.e_index(1)),
                                       J.algebra.e(J.e_index(2)))]
        return T.djj_vector(e1me2, J.iota(0, x))

    def a_iota(a, x):
        return T.tensor_vector(a, J.iota(0, x))

    x = alg.e("u1")
    y = alg.e("v1")
    a = T.c0_basis[0]
    b = T.c0_basis[1]
    xy = Chat.product(x, y)
    prod = ca.product_ambient
    # (i) d0(x) . d0(y) = -1/2 d0(xy)
    assert vec_eq(prod(d0(x), d0(y)), [f(-1, 2) * c for c in d0(xy)])
    # (ii) d0(x) . (a x iota0(y)) = -1/2 a x iota0(xy)
    assert vec_eq(prod(d0(x), a_iota(a, y)), [f(-1, 2) * c for c in a_iota(a, xy)])
    # (iii) (a x iota0(x)) . d0(y) = -1/2 a x iota0(xy)
    assert vec_eq(prod(a_iota(a, x), d0(y)), [f(-1, 2) * c for c in a_iota(a, xy)])
    # (iv) (a x iota0(x)) . (b x iota0(y)) = -1/2 [a,b] x iota0(xy) - t(ab) d0(xy)
    br = [p - q for p, q in zip(C.product(a, b), C.product(b, a))]
    want = [f(-1, 2) * c for c in a_iota(br, xy)]
    tab = C.trace(C.product(a, b))
    want = [w - tab * c for w, c in zip(want, d0(xy))]
    assert vec_eq(prod(a_iota(a, x), a_iota(b, y)), want)


def test_theorem61_involution_on_d0():
    # conj(d0(x)) = -tau(d0(x)) = d0(xbar)
    C = binarion()
    Chat = split_quaternion()
    T, ca, TP, hom = theorem61(C, Chat)
    J = T.J
    alg = Chat.algebra
    e1me2 = [a - b for a, b in zip(J.algebra.e(J.e_index(1)),
                                   J.algebra.e(J.e_index(2)))]
    for lbl in alg.basis:
        x = alg.e(lbl)
        lhs = ca.conj_ambient(T.djj_vector(e1me2, J.iota(0, x)))
        rhs = T.djj_vector(e1me2, J.iota(0, Chat.conj(x)))
        assert vec_eq(lhs, rhs)


def test_tqj_maps_h3k():
    hom_a, hom_b, lie, TQ, T62 = tqj_maps(h3(ground()))
    # Remark-style spot check: alpha=1, x=0 -> (3/4, -1/4; -1/4, 3/4)
    J = TQ.J
    col = hom_a.matrix.apply(J.unit)
    n = hom_a.target.algebra.n
    assert col[0] == Fraction(3, 4) and col[n - 1] == Fraction(3, 4)
    x_slot = col[1:1 + J.dim]
    assert vec_eq(x_slot, [Fraction(-1, 4) * u for u in J.unit])
    # image of 1 is idempotent in A(J)
    sq = hom_a.target.algebra.multiply(col, col)
    assert vec_eq(sq, col)


def test_tqj_maps_h3quaternion():
    hom_a, hom_b, lie, TQ, T62 = tqj_maps(h3(split_quaternion()))
    assert check_super_jacobi(TQ.algebra).ok
    assert check_super_jacobi(T62.algebra).ok
    # the mapped bracket satisfies [a x x, b x y] = [a,b] x xy + 2t(ab) d_{x,y}
    Q, J = TQ.C, TQ.J
    qalg = Q.algebra
    x, y = TQ.j0_basis[0], TQ.j0_basis[1]
    lhs62 = T62.algebra.multiply(
        lie.apply(TQ.tensor_vector(qalg.e("p0"), x)),
        lie.apply(TQ.tensor_vector(qalg.e("p1"), y)))
    src = TQ.algebra.multiply(TQ.tensor_vector(qalg.e("p0"), x),
                              TQ.tensor_vector(qalg.e("p1"), y))
    assert vec_eq(lhs62, lie.apply(src))


def test_tqj_ground_jordan():
    from magma_tits.algebra import SuperAlgebra
    alg = SuperAlgebra(["1"], {(0, 0): {0: 1}}, name="k")
    J = JordanAlgebra(alg, [Fraction(1)], [Fraction(1)], provenance="custom")
    hom_a, hom_b, lie, TQ, T62 = tqj_maps(J)
    # S is 1-dimensional, spanned by a symmetric element
    assert hom_b.source.algebra.n == 1
    img = hom_a.matrix.apply(J.unit)
    assert vec_eq(hom_a.target.conj(img), img)


def test_ak_to_ajv():
    hom = ak_to_ajv()
    n = hom.source.algebra.n
    # gamma row: (0, e; 0, 0) -> (0, 1; 0, 0)
    src = [Fraction(0)] * n
    src[1] = Fraction(1)          # upper e
    img = hom.apply(src)
    want = [Fraction(0)] * n
    want[1] = Fraction(1)         # upper 1
    assert vec_eq(img, want)
    # mu row: (0, x; 0, 0) -> (0, -u; 0, 0)
    src = [Fraction(0)] * n
    src[2] = Fraction(1)
    img = hom.apply(src)
    want = [Fraction(0)] * n
    want[2] = Fraction(-1)
    assert vec_eq(img, want)
    # unit goes to unit
    one = [Fraction(0)] * n
    one[0] = one[n - 1] = Fraction(1)
    assert vec_eq(hom.apply(one), one)


def test_composite_t10_jv_to_ak():
    """(ak_to_ajv)^{-1} . Phi41 : T(C, J(V,theta))_(1,0) -> A(K), verified."""
    J = jordan_super_jvtheta()
    T, ca, AJV_from41, hom41 = theorem41(J)
    homk = ak_to_ajv()
    comp = homk.inverse_matrix() @ hom41.matrix
    AK = homk.source
    InvolutionHomomorphism(ca.awi, AK, comp, name="T10->AK").verify()
