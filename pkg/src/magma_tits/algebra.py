"""Finite-dimensional (super)algebras given by sparse structure constants.

A SuperAlgebra is a basis with a parity vector and a sparse table
b_i b_j = sum_k c^k_ij b_k.  The checkers (super-Jacobi, automorphism,
derivation, grading, centralizer) are exact; on rational algebras the bulk
pair/triple loops run on integer-scaled numpy tensors, with a pure-field
reference path kept for small cases and cross-validation.
"""

from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

import numpy as np

from .exact import (
    QQ, FieldGF, Matrix, Subspace,
    vec_zero, vec_eq, vec_is_zero, basis_vector,
)
from .int_fast import sc_to_dense_int, matrix_to_int_array, FLOAT_EXACT_BOUND

EVEN, ODD = 0, 1


class SuperAlgebra:
    """Algebra by structure constants; immutable after construction."""

    def __init__(self, basis, sc, parity=None, field=QQ, name="algebra",
                 is_lie_claimed=False, is_jordan_claimed=False,
                 is_associative_claimed=False):
        self.basis = list(basis)
        self.n = len(self.basis)
        self.field = field
        self.parity = list(parity) if parity is not None else [EVEN] * self.n
        if len(self.parity) != self.n:
            raise ValueError("parity vector has wrong length")
        self.name = name
        self.is_lie_claimed = is_lie_claimed
        self.is_jordan_claimed = is_jordan_claimed
        self.is_associative_claimed = is_associative_claimed
        self.sc = {}
        for (i, j), row in sc.items():
            clean = {}
            for k, c in row.items():
                c = field.of(c)
                if not c:
                    continue
                if self.parity[k] != (self.parity[i] + self.parity[j]) % 2:
                    raise ValueError(
                        "structure constant (%d,%d,%d) violates parity" % (i, j, k))
                clean[k] = c
            if clean:
                self.sc[(i, j)] = clean
        self._index = {lbl: i for i, lbl in enumerate(self.basis)}
        self._int_cache = None

    # -- basic queries --------------------------------------------------

    @property
    def dim(self):
        return self.n

    @property
    def dim_even(self):
        return self.parity.count(EVEN)

    @property
    def dim_odd(self):
        return self.parity.count(ODD)

    def index(self, label):
        return self._index[label]

    def e(self, label_or_index):
        """Basis coordinate vector by label or index."""
        i = label_or_index if isinstance(label_or_index, int) else self._index[label_or_index]
        return basis_vector(self.n, i, self.field)

    def product_basis(self, i, j):
        return self.sc.get((i, j), {})

    def multiply(self, x, y):
        """Bilinear extension of the structure constants to coordinate vectors."""
        if len(x) != self.n or len(y) != self.n:
            raise ValueError("operand dimension mismatch (dim %d)" % self.n)
        out = vec_zero(self.n, self.field)
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                row = self.sc.get((i, j))
                if row:
                    f = xi * yj
                    for k, c in row.items():
                        out[k] = out[k] + f * c
        return out

    bracket = multiply

    def left_mult_matrix(self, x):
        """Matrix of left multiplication L_x."""
        L = Matrix.zeros(self.n, self.n, self.field)
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j in range(self.n):
                row = self.sc.get((i, j))
                if row:
                    for k, c in row.items():
                        L.rows[k][j] = L.rows[k][j] + xi * c
        return L

    def right_mult_matrix(self, x):
        """Matrix of right multiplication R_x (w -> w x)."""
        R = Matrix.zeros(self.n, self.n, self.field)
        for j, xj in enumerate(x):
            if not xj:
                continue
            for i in range(self.n):
                row = self.sc.get((i, j))
                if row:
                    for k, c in row.items():
                        R.rows[k][i] = R.rows[k][i] + xj * c
        return R

    ad_matrix = left_mult_matrix

    def format_vector(self, v):
        terms = []
        for i, c in enumerate(v):
            if c:
                terms.append("%s*%s" % (c, self.basis[i]))
        return " + ".join(terms) if terms else "0"

    def parity_of_vector(self, v):
        """Parity of a homogeneous vector (zero counts as even), None if mixed."""
        ps = {self.parity[i] for i, c in enumerate(v) if c}
        if not ps:
            return EVEN
        return ps.pop() if len(ps) == 1 else None

    # -- integer tensors for the bulk checkers --------------------------

    def _int_tensors(self):
        if self._int_cache is None:
            if self.field.is_rational:
                T, D = sc_to_dense_int(self.sc, self.n)
            else:
                T = np.zeros((self.n, self.n, self.n), dtype=np.int64)
                for (i, j), row in self.sc.items():
                    for k, c in row.items():
                        T[i, j, k] = c.v
                D = 1
            AD = np.ascontiguousarray(T.transpose(0, 2, 1))  # AD[m] = matrix of ad(b_m)
            self._int_cache = (T, D, AD)
        return self._int_cache

    def _mod(self):
        return None if self.field.is_rational else self.field.p

    # -- change of basis -------------------------------------------------

    def transported(self, U, new_labels=None, new_parity=None, name=None):
        """The same algebra in the basis given by the columns of U."""
        if U.nrows != self.n or U.ncols != self.n:
            raise ValueError("change of basis must be square of the algebra dimension")
        Uinv = U.inverse()
        cols = [U.column(j) for j in range(self.n)]
        if new_parity is None:
            new_parity = []
            for c in cols:
                p = self.parity_of_vector(c)
                if p is None:
                    raise ValueError("new basis vector of mixed parity")
                new_parity.append(p)
        sc = {}
        for i in range(self.n):
            for j in range(self.n):
                prod = self.multiply(cols[i], cols[j])
                if vec_is_zero(prod):
                    continue
                coords = Uinv.apply(prod)
                row = {k: c for k, c in enumerate(coords) if c}
                if row:
                    sc[(i, j)] = row
        labels = new_labels or ["f%d" % i for i in range(self.n)]
        return SuperAlgebra(labels, sc, parity=new_parity, field=self.field,
                            name=name or (self.name + "'"))

    # -- serialization ----------------------------------------------------

    def to_json_dict(self):
        entries = []
        for (i, j), row in self.sc.items():
            for k, c in row.items():
                entries.append([i, j, k, _scalar_str(c)])
        entries.sort(key=lambda e: (e[0], e[1], e[2]))
        d = {"basis": list(self.basis), "parity": list(self.parity), "sc": entries}
        if not self.field.is_rational:
            d["field"] = self.field.p
        return d

    @classmethod
    def from_json_dict(cls, d, name="algebra"):
        field = QQ if "field" not in d else FieldGF(d["field"])
        sc = {}
        for i, j, k, s in d["sc"]:
            sc.setdefault((i, j), {})[k] = field.of(Fraction(s) if field.is_rational else s)
        return cls(d["basis"], sc, parity=d.get("parity"), field=field, name=name)

    def __repr__(self):
        if self.dim_odd:
            return "SuperAlgebra(%s, dim (%d|%d))" % (self.name, self.dim_even, self.dim_odd)
        return "SuperAlgebra(%s, dim %d)" % (self.name, self.n)


def _scalar_str(c):
    if isinstance(c, Fraction):
        return "%d/%d" % (c.numerator, c.denominator) if c.denominator != 1 else str(c.numerator)
    return str(c.v)


class LinearMap:
    """Linear map between algebras, stored as an exact matrix."""

    def __init__(self, domain, codomain, matrix, parity=EVEN):
        if matrix.ncols != domain.n or matrix.nrows != codomain.n:
            raise ValueError("matrix shape does not match the algebras")
        self.domain = domain
        self.codomain = codomain
        self.matrix = matrix
        self.parity = parity

    @classmethod
    def from_columns(cls, domain, codomain, cols, parity=EVEN):
        return cls(domain, codomain, Matrix.from_columns(cols, domain.field), parity)

    def apply(self, v):
        return self.matrix.apply(v)

    def compose(self, other):
        """self after other."""
        return LinearMap(other.domain, self.codomain, self.matrix @ other.matrix,
                         (self.parity + other.parity) % 2)

    def is_invertible(self):
        return _invertible(self.matrix)

    def __eq__(self, other):
        return isinstance(other, LinearMap) and self.matrix == other.matrix

    def __repr__(self):
        return "LinearMap(%s -> %s)" % (self.domain.name, self.codomain.name)


class Grading:
    """Assignment of a grading-group degree to each basis index."""

    def __init__(self, group, degrees):
        if group not in ("Z2xZ2", "Z3"):
            raise ValueError("unsupported grading group %r" % group)
        self.group = group
        self.degrees = list(degrees)

    def add(self, a, b):
        if self.group == "Z2xZ2":
            return ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2)
        return (a + b) % 3


@dataclass
class JacobiReport:
    ok: bool
    dim: int
    triples_checked: int
    anticom_failures: list = dataclass_field(default_factory=list)
    failures: list = dataclass_field(default_factory=list)
    name: str = ""

    def __str__(self):
        if self.ok:
            return ("super-Jacobi OK on %s: dim %d, %d triples"
                    % (self.name, self.dim, self.triples_checked))
        lines = ["super-Jacobi FAILED on %s (dim %d)" % (self.name, self.dim)]
        for i, j in self.anticom_failures[:10]:
            lines.append("  not super-anticommutative on pair (%d,%d)" % (i, j))
        for i, j, k, witness in self.failures[:10]:
            lines.append("  triple (%d,%d,%d): jacobiator = %s" % (i, j, k, witness))
        return "\n".join(lines)


def _check_anticommutative(A, max_witnesses):
    failures = []
    seen = set(A.sc.keys()) | {(j, i) for (i, j) in A.sc.keys()}
    for (i, j) in sorted(seen):
        if i > j:
            continue
        row = A.sc.get((i, j), {})
        rev = A.sc.get((j, i), {})
        sign = -1 if (A.parity[i] and A.parity[j]) else 1
        # want: rev == -sign * row ; for i == j even: row must vanish
        if i == j and A.parity[i] == EVEN:
            if row:
                failures.append((i, j))
            continue
        keys = set(row) | set(rev)
        for k in keys:
            a = row.get(k, A.field.zero)
            b = rev.get(k, A.field.zero)
            if b != -(a if sign > 0 else -a):
                failures.append((i, j))
                break
        if len(failures) >= max_witnesses:
            break
    return failures


def _jacobiator(A, i, j, k):
    """Graded jacobiator of three basis elements, cyclic form."""
    p = A.parity
    s1 = -1 if (p[i] and p[k]) else 1
    s2 = -1 if (p[j] and p[i]) else 1
    s3 = -1 if (p[k] and p[j]) else 1
    bi, bj, bk = A.e(i), A.e(j), A.e(k)
    t1 = A.multiply(A.multiply(bi, bj), bk)
    t2 = A.multiply(A.multiply(bj, bk), bi)
    t3 = A.multiply(A.multiply(bk, bi), bj)
    return [s1 * a + s2 * b + s3 * c for a, b, c in zip(t1, t2, t3)]


def check_super_jacobi_reference(A, max_witnesses=10):
    """Triple-loop reference checker (pure field arithmetic)."""
    anticom = _check_anticommutative(A, max_witnesses)
    if anticom:
        return JacobiReport(False, A.n, 0, anticom_failures=anticom, name=A.name)
    n = A.n
    failures = []
    count = 0
    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                count += 1
                jac = _jacobiator(A, i, j, k)
                if not vec_is_zero(jac):
                    failures.append((i, j, k, A.format_vector(jac)))
                    if len(failures) >= max_witnesses:
                        return JacobiReport(False, n, count, failures=failures, name=A.name)
    return JacobiReport(not failures, n, count, failures=failures, name=A.name)


def check_super_jacobi(A, max_witnesses=10, chunk=24, parallel=1):
    """Exhaustive graded-Jacobi check.

    Super-anticommutativity is verified first on the sparse table; the
    triple check then reduces to the matrix identities
    ad([b_i,b_j]) = ad(b_i) ad(b_j) - (-1)^{|i||j|} ad(b_j) ad(b_i) over
    pairs i <= j, run on integer tensors (exact float64 window asserted).
    """
    anticom = _check_anticommutative(A, max_witnesses)
    n = A.n
    n_triples = n * (n + 1) * (n + 2) // 6
    if anticom:
        return JacobiReport(False, n, 0, anticom_failures=anticom, name=A.name)
    if n == 0:
        return JacobiReport(True, 0, 0, name=A.name)

    T, _D, AD = A._int_tensors()
    maxval = int(np.abs(AD).max(initial=0))
    if n * float(maxval) * float(maxval) >= FLOAT_EXACT_BOUND:
        return check_super_jacobi_reference(A, max_witnesses)
    mod = A._mod()

    ADf = AD.astype(np.float64)
    Tf = T.astype(np.float64)
    par = np.array(A.parity, dtype=np.float64)

    if parallel > 1:
        bad_pairs = _pair_scan_parallel(ADf, Tf, par, chunk, parallel, mod)
    else:
        bad_pairs = _pair_scan(ADf, Tf, par, range(n), chunk, mod)

    failures = []
    for (i, j) in sorted(bad_pairs):
        diff = _pair_diff(ADf, Tf, par, i, j, mod)
        for k in np.nonzero(np.any(diff != 0, axis=0))[0]:
            jac = _jacobiator(A, i, j, int(k))
            if not vec_is_zero(jac):
                failures.append((i, j, int(k), A.format_vector(jac)))
                if len(failures) >= max_witnesses:
                    break
        if len(failures) >= max_witnesses:
            break
    return JacobiReport(not failures, n, n_triples, failures=failures, name=A.name)


def _pair_diff(ADf, Tf, par, i, j, mod):
    Ai, Aj = ADf[i], ADf[j]
    s = -1.0 if (par[i] and par[j]) else 1.0
    C = Ai @ Aj - s * (Aj @ Ai)
    R = np.tensordot(Tf[i, j], ADf, axes=(0, 0))
    diff = C - R
    if mod is not None:
        diff = diff.astype(np.int64) % mod
    return diff


def _pair_scan(ADf, Tf, par, i_range, chunk, mod):
    n = ADf.shape[0]
    bad = []
    for i in i_range:
        Ai = ADf[i]
        for j0 in range(i, n, chunk):
            js = np.arange(j0, min(j0 + chunk, n))
            block = ADf[js]
            signs = np.where((par[i] != 0) & (par[js] != 0), -1.0, 1.0)
            C = np.matmul(Ai, block) - signs[:, None, None] * np.matmul(block, Ai)
            R = np.tensordot(Tf[i, js], ADf, axes=(1, 0))
            diff = C - R
            if mod is not None:
                diff = diff.astype(np.int64) % mod
            hit = np.nonzero(np.any(diff != 0, axis=(1, 2)))[0]
            for h in hit:
                bad.append((i, int(js[h])))
    return bad


def _pair_scan_parallel(ADf, Tf, par, chunk, workers, mod):
    import multiprocessing as mp
    n = ADf.shape[0]
    ranges = [range(w, n, workers) for w in range(workers)]
    try:
        with mp.Pool(workers) as pool:
            parts = pool.starmap(
                _pair_scan, [(ADf, Tf, par, r, chunk, mod) for r in ranges])
        return [p for part in parts for p in part]
    except (OSError, mp.ProcessError):
        return _pair_scan(ADf, Tf, par, range(n), chunk, mod)


def _invertible(M):
    """Exact invertibility of a square Matrix."""
    if M.nrows != M.ncols:
        return False
    if M.field.is_rational:
        A, _D = matrix_to_int_array(M)
        # determinant nonzero mod p certifies invertibility; on zero fall back
        for p in (2147483629, 2147483587):
            if _rank_mod_p(A % p, p) == M.nrows:
                return True
        return M.rank() == M.nrows
    return M.rank() == M.nrows


def _rank_mod_p(A, p):
    A = A.astype(np.int64).copy()
    n, m = A.shape
    r = 0
    for c in range(m):
        if r == n:
            break
        piv = None
        for i in range(r, n):
            if A[i, c] % p:
                piv = i
                break
        if piv is None:
            continue
        A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        col = A[r + 1:, c].copy()
        A[r + 1:] = (A[r + 1:] - np.outer(col, A[r])) % p
        r += 1
    return r


def _tensor_fast_ok(A, M):
    if not A.field.is_rational:
        return False
    T, _Dt, _AD = A._int_tensors()
    Am, Dm = matrix_to_int_array(M)
    tmax = float(np.abs(T).max(initial=0))
    mmax = float(np.abs(Am).max(initial=0))
    return ((A.n ** 2) * mmax * mmax * tmax < FLOAT_EXACT_BOUND
            and A.n * tmax * mmax * Dm < FLOAT_EXACT_BOUND)


def is_automorphism(A, f, check_invertible=True):
    """True iff f is an invertible even map with f(xy) = f(x)f(y)."""
    if f.parity != EVEN:
        return False
    M = f.matrix
    if M.nrows != A.n or M.ncols != A.n:
        return False
    if check_invertible and not _invertible(M):
        return False
    if _tensor_fast_ok(A, M):
        T, Dt, _AD = A._int_tensors()
        Am, Dm = matrix_to_int_array(M)
        Tf = T.astype(np.float64)
        Mf = Am.astype(np.float64)
        lhs = np.tensordot(Mf, Tf, axes=(0, 0))          # (i, q, k)
        lhs = np.tensordot(Mf, lhs, axes=(0, 1))         # (j, i, k)
        lhs = lhs.transpose(1, 0, 2)
        rhs = np.tensordot(Tf, Mf, axes=(2, 1)) * Dm     # (i, j, k) scaled to match
        return bool(np.array_equal(lhs, rhs))
    cols = [M.column(j) for j in range(A.n)]
    for i in range(A.n):
        for j in range(A.n):
            lhs = M.apply(A.multiply(A.e(i), A.e(j)))
            rhs = A.multiply(cols[i], cols[j])
            if not vec_eq(lhs, rhs):
                return False
    return True


def is_derivation(A, f):
    """True iff f(xy) = f(x)y + (-1)^{|f||x|} x f(y) on all basis pairs."""
    M = f.matrix
    if M.nrows != A.n or M.ncols != A.n:
        return False
    if _tensor_fast_ok(A, M):
        T, _Dt, _AD = A._int_tensors()
        Am, _Dm = matrix_to_int_array(M)
        Tf = T.astype(np.float64)
        Mf = Am.astype(np.float64)
        lhs = np.tensordot(Tf, Mf, axes=(2, 1))                    # f(b_i b_j)
        r1 = np.tensordot(Mf, Tf, axes=(0, 0))                     # (i, j, k)
        r2 = np.tensordot(Mf, Tf.transpose(1, 0, 2), axes=(0, 0))  # (j, i, k)
        r2 = r2.transpose(1, 0, 2)
        if f.parity == ODD:
            signs = np.where(np.array(A.parity) != 0, -1.0, 1.0)
            r2 = r2 * signs[:, None, None]
        return bool(np.array_equal(lhs, r1 + r2))
    cols = [M.column(j) for j in range(A.n)]
    for i in range(A.n):
        si = -1 if (f.parity and A.parity[i]) else 1
        for j in range(A.n):
            lhs = M.apply(A.multiply(A.e(i), A.e(j)))
            rhs = A.multiply(cols[i], A.e(j))
            t2 = A.multiply(A.e(i), cols[j])
            if si < 0:
                rhs = [a - b for a, b in zip(rhs, t2)]
            else:
                rhs = [a + b for a, b in zip(rhs, t2)]
            if not vec_eq(lhs, rhs):
                return False
    return True


def check_grading(A, grading):
    """True iff every nonzero structure constant respects the degree map."""
    deg = grading.degrees
    if len(deg) != A.n:
        raise ValueError("grading has wrong length")
    for (i, j), row in A.sc.items():
        want = grading.add(deg[i], deg[j])
        for k in row:
            if deg[k] != want:
                return False
    return True


def centralizer(L, S):
    """Basis of {x in L : [s, x] = 0 for all s in S}."""
    if not S:
        return [L.e(i) for i in range(L.n)]
    rows = []
    for s in S:
        rows.extend(L.left_mult_matrix(s).rows)
    return Matrix(rows, L.field).kernel_basis()
