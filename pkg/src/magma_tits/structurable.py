"""Algebras with involution: A(J), A(A) for admissible cubic A, C x C^.

A(J) is the 2x2 block space {(alpha, x; y, beta)} over a Jordan algebra J
with normalized trace, multiplied through the cross product

    x X y = 2xy - 3t(x)y - 3t(y)x + (9t(x)t(y) - 3t(xy)) 1,

with the diagonal-swap involution.  For an admissible cubic algebra the
cross product degenerates to 2xy and the trace form replaces 3t_J(xy').
The structurable checker verifies Allison's operator identity

    [T_u, V_{x,y}] = V_{T_u x, y} - V_{x, T_{sigma(u)} y},
    V_{x,y} z = (x sigma(y)) z + (z sigma(y)) x - (z sigma(x)) y,
    T_u = V_{u,1},

with Koszul signs in the super case (a term acquires (-1)^{|p||q|} whenever
the symbols p, q transpose relative to the argument order (x, y, z), and the
operator commutator/substitutions are graded).
"""

from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .exact import Matrix, vec_eq
from .algebra import SuperAlgebra, EVEN
from .int_fast import FLOAT_EXACT_BOUND, matrix_to_int_array, sc_to_dense_int


class AlgebraWithInvolution:
    """A SuperAlgebra together with an involutive superantiautomorphism."""

    def __init__(self, algebra, sigma):
        if sigma.nrows != algebra.n or sigma.ncols != algebra.n:
            raise ValueError("involution matrix has wrong shape")
        self.algebra = algebra
        self.sigma = sigma

    @property
    def dim(self):
        return self.algebra.n

    def conj(self, x):
        return self.sigma.apply(x)

    def involution_failures(self):
        """Pairs where sigma fails sigma^2 = id or the superantiautomorphism law."""
        alg, sigma = self.algebra, self.sigma
        out = []
        if sigma @ sigma != Matrix.identity(alg.n, alg.field):
            out.append("sigma^2 != id")
        cols = [sigma.column(j) for j in range(alg.n)]
        for i in range(alg.n):
            for j in range(alg.n):
                lhs = sigma.apply(alg.multiply(alg.e(i), alg.e(j)))
                rhs = alg.multiply(cols[j], cols[i])
                if alg.parity[i] and alg.parity[j]:
                    rhs = [-x for x in rhs]
                if not vec_eq(lhs, rhs):
                    out.append((i, j))
        return out

    def verify_involution(self):
        bad = self.involution_failures()
        if bad:
            raise ValueError("%s: involution fails: %r" % (self.algebra.name, bad[:5]))
        return True

    def hermitian_basis(self):
        """Basis of {z : sigma(z) = z}."""
        M = self.sigma - Matrix.identity(self.algebra.n, self.algebra.field)
        return M.kernel_basis()

    def skew_basis(self):
        M = self.sigma + Matrix.identity(self.algebra.n, self.algebra.field)
        return M.kernel_basis()

    def __repr__(self):
        return "AlgebraWithInvolution(%s)" % self.algebra.name


def a_of_j(J, name=None):
    """The 2x2 construction over a Jordan (super)algebra with normalized trace.

    Basis order: alpha slot, x slot (copy of J), y slot (copy of J), beta slot.
    """
    alg = J.algebra
    f = alg.field
    nj = alg.n
    n = 2 + 2 * nj
    A_IDX, B_IDX = 0, n - 1
    labels = (["alpha"] + ["x:%s" % b for b in alg.basis]
              + ["y:%s" % b for b in alg.basis] + ["beta"])
    parity = [EVEN] + list(alg.parity) + list(alg.parity) + [EVEN]

    def xi(i):
        return 1 + i

    def yi(i):
        return 1 + nj + i

    three = f.of(3)
    sc = {}

    def add(i, j, k, c):
        if c:
            sc.setdefault((i, j), {})[k] = sc.setdefault((i, j), {}).get(k, f.zero) + c

    def add_vec(i, j, vec, offset):
        for t, c in enumerate(vec):
            if c:
                add(i, j, offset + t, c)

    # alpha/beta against everything
    add(A_IDX, A_IDX, A_IDX, f.one)                     # alpha alpha'
    add(B_IDX, B_IDX, B_IDX, f.one)                     # beta beta'
    for i in range(nj):
        add(A_IDX, xi(i), xi(i), f.one)                 # alpha x'
        add(B_IDX, yi(i), yi(i), f.one)                 # beta y'
        add(xi(i), B_IDX, xi(i), f.one)                 # beta' x
        add(yi(i), A_IDX, yi(i), f.one)                 # alpha' y
    # trace pairings and cross products
    for i in range(nj):
        for j in range(nj):
            tij = three * J.trace_of(alg.multiply(alg.e(i), alg.e(j)))
            add(xi(i), yi(j), A_IDX, tij)               # alpha alpha' + 3t(x y')
            add(yi(i), xi(j), B_IDX, tij)               # beta beta' + 3t(y x')
            cr = J.cross(alg.e(i), alg.e(j))
            add_vec(yi(i), yi(j), cr, 1)                # y X y' into the x slot
            add_vec(xi(i), xi(j), cr, 1 + nj)           # x X x' into the y slot
    A = SuperAlgebra(labels, sc, parity=parity, field=f,
                     name=name or ("A(%s)" % J.name))
    sigma = Matrix.identity(n, f)
    sigma[A_IDX, A_IDX] = f.zero
    sigma[B_IDX, B_IDX] = f.zero
    sigma[A_IDX, B_IDX] = f.one
    sigma[B_IDX, A_IDX] = f.one
    return AlgebraWithInvolution(A, sigma)


def a_of_cubic(K, name=None):
    """The 2x2 construction over an admissible cubic algebra (cross = 2xy,
    diagonal pairing 3<x|y'>)."""
    alg = K.algebra
    f = alg.field
    nk = alg.n
    n = 2 + 2 * nk
    labels = (["alpha"] + ["x:%s" % b for b in alg.basis]
              + ["y:%s" % b for b in alg.basis] + ["beta"])
    parity = [EVEN] + list(alg.parity) + list(alg.parity) + [EVEN]
    A_IDX, B_IDX = 0, n - 1

    def xi(i):
        return 1 + i

    def yi(i):
        return 1 + nk + i

    three = f.of(3)
    two = f.of(2)
    sc = {}

    def add(i, j, k, c):
        if c:
            sc.setdefault((i, j), {})[k] = sc.setdefault((i, j), {}).get(k, f.zero) + c

    def add_vec(i, j, vec, offset, scale):
        for t, c in enumerate(vec):
            if c:
                add(i, j, offset + t, scale * c)

    add(A_IDX, A_IDX, A_IDX, f.one)
    add(B_IDX, B_IDX, B_IDX, f.one)
    for i in range(nk):
        add(A_IDX, xi(i), xi(i), f.one)
        add(B_IDX, yi(i), yi(i), f.one)
        add(xi(i), B_IDX, xi(i), f.one)
        add(yi(i), A_IDX, yi(i), f.one)
    for i in range(nk):
        for j in range(nk):
            tij = three * K.trace_form(alg.e(i), alg.e(j))
            add(xi(i), yi(j), A_IDX, tij)
            add(yi(i), xi(j), B_IDX, tij)
            prod = alg.multiply(alg.e(i), alg.e(j))
            add_vec(yi(i), yi(j), prod, 1, two)         # 2 y y'
            add_vec(xi(i), xi(j), prod, 1 + nk, two)    # 2 x x'
    A = SuperAlgebra(labels, sc, parity=parity, field=f,
                     name=name or ("A(%s)" % alg.name))
    sigma = Matrix.identity(n, f)
    sigma[A_IDX, A_IDX] = f.zero
    sigma[B_IDX, B_IDX] = f.zero
    sigma[A_IDX, B_IDX] = f.one
    sigma[B_IDX, A_IDX] = f.one
    return AlgebraWithInvolution(A, sigma)


def tensor_product(C, Chat, name=None):
    """C x C^ with (a x x)(b x y) = ab x xy and conjugate a^bar x x^bar."""
    f = C.field
    nc, nd = C.dim, Chat.dim
    labels = ["%s(x)%s" % (a, b) for a in C.algebra.basis for b in Chat.algebra.basis]

    def idx(i, j):
        return i * nd + j

    sc = {}
    for i1 in range(nc):
        for i2 in range(nc):
            row_c = C.algebra.product_basis(i1, i2)
            if not row_c:
                continue
            for j1 in range(nd):
                for j2 in range(nd):
                    row_d = Chat.algebra.product_basis(j1, j2)
                    if not row_d:
                        continue
                    tgt = {}
                    for kc, cc in row_c.items():
                        for kd, cd in row_d.items():
                            tgt[idx(kc, kd)] = cc * cd
                    sc[(idx(i1, j1), idx(i2, j2))] = tgt
    A = SuperAlgebra(labels, sc, field=f, name=name or ("%s(x)%s" % (C.name, Chat.name)))
    CC = C.conj_matrix()
    CD = Chat.conj_matrix()
    sigma = Matrix.zeros(nc * nd, nc * nd, f)
    for i in range(nc):
        for j in range(nd):
            col_c = CC.column(i)
            col_d = CD.column(j)
            for p in range(nc):
                if not col_c[p]:
                    continue
                for q in range(nd):
                    if col_d[q]:
                        sigma[idx(p, q), idx(i, j)] = col_c[p] * col_d[q]
    return AlgebraWithInvolution(A, sigma)


@dataclass
class StructurableReport:
    ok: bool
    dim: int
    triples_checked: int
    failures: list = dataclass_field(default_factory=list)
    name: str = ""

    def __str__(self):
        if self.ok:
            return ("structurable identity OK on %s: dim %d, %d triples"
                    % (self.name, self.dim, self.triples_checked))
        lines = ["structurable identity FAILS on %s" % self.name]
        for u, x, y in self.failures[:10]:
            lines.append("  witness triple (u,x,y) = (%d,%d,%d)" % (u, x, y))
        return "\n".join(lines)


def _v_operator_tensor(AI):
    """V[x, y] as a stack of matrices over all basis pairs, integer-scaled.

    V_{x,y} z = (x s(y)) z
                + (-1)^{|x||y| + |y||z| + |z||x|} (z s(y)) x
                - (-1)^{|z|(|x|+|y|)} (z s(x)) y,

    each monomial carrying the Koszul parity of its symbol permutation
    relative to (x, y, z).  Returns (V, parV, Ds, par): V[x, y, k, z] is
    float64 carrying integers at a common scale Dt^2 * Ds, parV the parity
    table of V_{x,y}.
    """
    alg = AI.algebra
    n = alg.n
    T, _Dt = sc_to_dense_int(alg.sc, n)
    S, Ds = matrix_to_int_array(AI.sigma)
    Tf = T.astype(np.float64)
    Sf = S.astype(np.float64)
    par = np.array(alg.parity, dtype=np.int64)

    # SxT[y, x, a] = sum_q S[q, y] T[x, q, a]
    SxT = np.tensordot(Sf, Tf, axes=([0], [1]))
    # w[x, y, a] = coordinates of x * sigma(y)
    w = SxT.transpose(1, 0, 2)
    # L_w[k, z] = sum_a w[x, y, a] T[a, z, k]
    term1 = np.tensordot(w, Tf, axes=([2], [0])).transpose(0, 1, 3, 2)
    # Rsig[y][m, z] = coords of z sigma(y);  Rmat[x][k, m] = coords of m x
    Rsig = SxT.transpose(0, 2, 1)
    Rmat = Tf.transpose(1, 2, 0)
    P = np.tensordot(Rmat, Rsig, axes=([2], [1]))      # P[a, k, b, z]
    termB = P.transpose(0, 2, 1, 3)                    # (z s(y)) x
    termC = P.transpose(2, 0, 1, 3)                    # (z s(x)) y
    parV = (par[:, None] + par[None, :]) % 2
    zxy = (parV[:, :, None] * par[None, None, :]) % 2  # |z|(|x|+|y|)
    xy = (par[:, None] * par[None, :]) % 2
    sgB = np.where((zxy + xy[:, :, None]) % 2 != 0, -1.0, 1.0)
    sgC = np.where(zxy != 0, -1.0, 1.0)
    V = term1 + sgB[:, :, None, :] * termB - sgC[:, :, None, :] * termC
    return V, parV, Ds, par


def check_structurable(AI, max_witnesses=10):
    """Exhaustive check of the structurable operator identity on basis triples."""
    alg = AI.algebra
    n = alg.n
    if n == 0:
        return StructurableReport(True, 0, 0, name=alg.name)
    V, parV, Ds, par = _v_operator_tensor(AI)
    maxv = float(np.abs(V).max(initial=0.0))
    S, _Ds2 = matrix_to_int_array(AI.sigma)
    ms = float(np.abs(S).max(initial=0.0))
    if max(n * maxv * maxv * Ds, n * n * ms * maxv * maxv) >= FLOAT_EXACT_BOUND:
        raise ArithmeticError("structurable check exceeds the exact float64 window")
    Sf = S.astype(np.float64)
    unit = np.zeros(n)
    for i, c in _unit_coords(alg):
        unit[i] = c
    # T_u = V_{u, 1}: contract the y index of V with the unit coordinates
    Tops = np.tensordot(V, unit, axes=([1], [0]))      # [u, out, z]

    failures = []
    # fixed layouts for one-GEMM contractions per u
    V_a_first = np.ascontiguousarray(V.transpose(2, 0, 1, 3).reshape(n, -1))  # (a; x y z)
    V_rows = V.reshape(-1, n)                                  # (x y k; a)
    V_p_first = V.reshape(n, -1)                               # (p; y k z)
    V_q_first = np.ascontiguousarray(V.transpose(1, 0, 2, 3).reshape(n, -1))  # (q; x k z)
    for u in range(n):
        Tu = Tops[u]
        su_x = np.where((par[u] * par) != 0, -1.0, 1.0)        # (-1)^{|u||x|}
        # graded commutator [T_u, V_{x,y}] = T_u V - (-1)^{|u|(|x|+|y|)} V T_u
        TV = np.dot(Tu, V_a_first).reshape(n, n, n, n).transpose(1, 2, 0, 3)
        VT = np.dot(V_rows, Tu).reshape(n, n, n, n)
        sgn = np.where(((par[u] * parV) % 2) != 0, -1.0, 1.0)
        diff = (TV - sgn[:, :, None, None] * VT) * Ds
        # V_{T_u x, y}: substitute in the x slot (scale matches lhs after * Ds)
        r1 = np.dot(Tu.T, V_p_first).reshape(n, n, n, n)       # 'px,pykz->xykz'
        diff -= r1 * Ds
        # V_{x, T_{sigma(u)} y} with sign (-1)^{|u||x|}
        su = Sf[:, u]                                          # coords of sigma(b_u), scale Ds
        Tsu = np.tensordot(su, Tops, axes=([0], [0]))          # scale Ds * (V scale)
        r2 = np.dot(Tsu.T, V_q_first).reshape(n, n, n, n)      # (y, x, k, z)
        diff += su_x[:, None, None, None] * r2.transpose(1, 0, 2, 3)
        if not alg.field.is_rational:
            diff = diff.astype(np.int64) % alg.field.p
        bad = np.nonzero(np.any(diff != 0, axis=(2, 3)))
        for x, y in zip(*bad):
            failures.append((u, int(x), int(y)))
            if len(failures) >= max_witnesses:
                return StructurableReport(False, n, n ** 3, failures=failures,
                                          name=alg.name)
    return StructurableReport(not failures, n, n ** 3, failures=failures, name=alg.name)


def _unit_coords(alg):
    """Integer-scaled coordinates of the unit, as sparse (index, float) pairs.

    A common overall scale is harmless: the structurable identity is linear
    in T_u, so both sides pick up the same factor.
    """
    from .s4 import _find_unit
    u = _find_unit(alg)
    if u is None:
        raise ValueError("%s is not unital" % alg.name)
    if alg.field.is_rational:
        from .int_fast import scaled_int_entries
        _D, ints = scaled_int_entries(u)
        return [(i, float(c)) for i, c in enumerate(ints) if c]
    return [(i, float(c.v)) for i, c in enumerate(u) if c]
