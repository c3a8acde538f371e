"""Split unital composition algebras over k, char k != 2, 3.

The split Cayley algebra carries the distinguished basis
e1, e2, u0, u1, u2, v0, v1, v2 with

    e_l^2 = e_l,  e1 e2 = 0 = e2 e1,
    e1 u_i = u_i = u_i e2,   e2 v_i = v_i = v_i e1,
    e2 u_i = 0 = u_i e1,     e1 v_i = 0 = v_i e2,
    u_i u_{i+1} = v_{i+2} = -u_{i+1} u_i,
    v_i v_{i+1} = u_{i+2} = -v_{i+1} v_i      (indices mod 3),
    u_i^2 = 0 = v_i^2,
    u_i v_j = -delta_ij e1,  v_i u_j = -delta_ij e2,

unit 1 = e1 + e2, and polar norm n(e1,e2) = 1, n(u_i,v_j) = delta_ij.
The split quaternion/binarion/ground algebras are its subalgebras; the
S4-invariant (Hamilton-type) quaternion subalgebra span{1, u_i+v_i} is
provided separately for the T(Q,J) variant.
"""

from .exact import QQ, Matrix, Subspace, vec_zero, basis_vector, flatten_matrix
from .algebra import SuperAlgebra, LinearMap
from .s4 import GroupAction


class CompositionAlgebra:
    """A unital composition algebra: product table, polar norm, trace, conjugation."""

    def __init__(self, algebra, norm_polar, unit, name, cayley_labels=False):
        self.algebra = algebra
        self.field = algebra.field
        self.norm_polar = norm_polar        # matrix of n(b_i, b_j)
        self.unit = unit                    # coordinates of 1
        self.name = name
        self.has_cayley_labels = cayley_labels
        self._trace_row = norm_polar.apply(unit)   # t(a) = n(a, 1)

    @property
    def dim(self):
        return self.algebra.n

    def product(self, x, y):
        return self.algebra.multiply(x, y)

    def trace(self, x):
        return sum((c * xc for c, xc in zip(self._trace_row, x)),
                   start=self.field.zero)

    def norm_bilinear(self, x, y):
        return sum((xi * c for xi, c in zip(x, self.norm_polar.apply(y))),
                   start=self.field.zero)

    def norm(self, x):
        """Quadratic form n(x) = n(x,x)/2."""
        return self.norm_bilinear(x, x) / self.field.of(2)

    def conj(self, x):
        """Canonical involution a -> t(a) 1 - a."""
        t = self.trace(x)
        return [t * u - xi for u, xi in zip(self.unit, x)]

    def conj_matrix(self):
        cols = [self.conj(self.algebra.e(i)) for i in range(self.dim)]
        return Matrix.from_columns(cols, self.field)

    def traceless_basis(self):
        """Deterministic basis of C^0 = {a : t(a) = 0}.

        With the distinguished Cayley-type labels this is
        [e1 - e2, u0, u1, u2, v0, v1, v2] (resp. the evident subsets);
        otherwise the kernel of the trace functional in RREF order.
        """
        if self.has_cayley_labels:
            alg = self.algebra
            first = [a - b for a, b in zip(alg.e("e1"), alg.e("e2"))]
            rest = [alg.e(i) for i, lbl in enumerate(alg.basis) if lbl not in ("e1", "e2")]
            return [first] + rest
        return Matrix([self._trace_row], self.field).kernel_basis()

    def __repr__(self):
        return "CompositionAlgebra(%s, dim %d)" % (self.name, self.dim)


def _cayley_table(labels):
    """Structure constants of the split Cayley algebra restricted to labels."""
    idx = {lbl: i for i, lbl in enumerate(labels)}
    sc = {}

    def put(a, b, c, coef=1):
        if a in idx and b in idx and c in idx:
            sc.setdefault((idx[a], idx[b]), {})[idx[c]] = coef

    for l in (1, 2):
        put("e%d" % l, "e%d" % l, "e%d" % l)
    for i in range(3):
        u, v = "u%d" % i, "v%d" % i
        put("e1", u, u)
        put(u, "e2", u)
        put("e2", v, v)
        put(v, "e1", v)
        j = (i + 1) % 3
        k = (i + 2) % 3
        put("u%d" % i, "u%d" % j, "v%d" % k, 1)
        put("u%d" % j, "u%d" % i, "v%d" % k, -1)
        put("v%d" % i, "v%d" % j, "u%d" % k, 1)
        put("v%d" % j, "v%d" % i, "u%d" % k, -1)
        put(u, v, "e1", -1)
        put(v, u, "e2", -1)
    return sc


def _cayley_like(labels, name, field):
    sc = _cayley_table(labels)
    alg = SuperAlgebra(labels, sc, field=field, name=name)
    idx = {lbl: i for i, lbl in enumerate(labels)}
    n = len(labels)
    N = Matrix.zeros(n, n, field)
    one = field.one
    if "e1" in idx and "e2" in idx:
        N[idx["e1"], idx["e2"]] = one
        N[idx["e2"], idx["e1"]] = one
    for i in range(3):
        u, v = "u%d" % i, "v%d" % i
        if u in idx and v in idx:
            N[idx[u], idx[v]] = one
            N[idx[v], idx[u]] = one
    unit = vec_zero(n, field)
    unit[idx["e1"]] = one
    unit[idx["e2"]] = one
    return CompositionAlgebra(alg, N, unit, name, cayley_labels=True)


def split_cayley(field=QQ):
    labels = ["e1", "e2", "u0", "u1", "u2", "v0", "v1", "v2"]
    return _cayley_like(labels, "cayley", field)


def split_quaternion(field=QQ):
    return _cayley_like(["e1", "e2", "u1", "v1"], "quaternion", field)


def binarion(field=QQ):
    return _cayley_like(["e1", "e2"], "binarion", field)


def ground(field=QQ):
    alg = SuperAlgebra(["1"], {(0, 0): {0: 1}}, field=field, name="ground")
    N = Matrix([[2]], field)      # polar form: n(1,1) = 2, so n(1) = 1
    return CompositionAlgebra(alg, N, [field.one], "ground")


def invariant_quaternion(field=QQ):
    """The S4-invariant quaternion subalgebra span{1, u_i + v_i} of split Cayley.

    With p_i = u_i + v_i: p_i p_{i+1} = p_{i+2} = -p_{i+1} p_i and p_i^2 = -1.
    Over Q this is a division algebra (it is not the split quaternion algebra).
    """
    labels = ["1", "p0", "p1", "p2"]
    sc = {(0, 0): {0: 1}}
    for i in range(3):
        pi, pj, pk = 1 + i, 1 + (i + 1) % 3, 1 + (i + 2) % 3
        sc[(0, pi)] = {pi: 1}
        sc[(pi, 0)] = {pi: 1}
        sc[(pi, pi)] = {0: -1}
        sc[(pi, pj)] = {pk: 1}
        sc[(pj, pi)] = {pk: -1}
    alg = SuperAlgebra(labels, sc, field=field, name="quatQ")
    N = Matrix.zeros(4, 4, field)
    N[0, 0] = field.of(2)
    for i in range(1, 4):
        N[i, i] = field.of(2)
    unit = basis_vector(4, 0, field)
    return CompositionAlgebra(alg, N, unit, "quatQ")


def s4_on_invariant_quaternion(Q):
    """S4 on span{1, p0, p1, p2}: the restriction of the Cayley action
    (p_i = u_i + v_i transforms exactly like the 3-dimensional
    standard-times-alternating representation)."""
    if Q.name != "quatQ":
        raise ValueError("expected the invariant quaternion algebra")
    alg = Q.algebra
    f = Q.field

    def act(images):
        cols = [Q.unit]
        for i in range(3):
            tgt, coef = images[i]
            cols.append([f.of(coef) * x for x in alg.e("p%d" % tgt)])
        return Matrix.from_columns(cols, f)

    tau1 = act({0: (0, 1), 1: (1, -1), 2: (2, -1)})
    tau2 = act({0: (0, -1), 1: (1, 1), 2: (2, -1)})
    phi = act({0: (1, 1), 1: (2, 1), 2: (0, 1)})
    tau = act({0: (0, -1), 1: (2, -1), 2: (1, -1)})
    return GroupAction(alg, tau1, tau2, phi, tau, name="S4 on Q")


def associator(C, a, b, c):
    """(a, b, c) = (ab)c - a(bc)."""
    alg = C.algebra
    return [x - y for x, y in zip(alg.multiply(alg.multiply(a, b), c),
                                  alg.multiply(a, alg.multiply(b, c)))]


def inner_derivation(C, a, b):
    """D_{a,b} : c -> [[a,b],c] + 3 (a,c,b)."""
    alg = C.algebra
    ab = alg.multiply(a, b)
    ba = alg.multiply(b, a)
    comm = [x - y for x, y in zip(ab, ba)]
    three = C.field.of(3)
    cols = []
    for i in range(C.dim):
        c = alg.e(i)
        t1 = [x - y for x, y in zip(alg.multiply(comm, c), alg.multiply(c, comm))]
        asc = associator(C, a, c, b)
        cols.append([x + three * y for x, y in zip(t1, asc)])
    return LinearMap(alg, alg, Matrix.from_columns(cols, C.field))


class DerivationAlgebra:
    """der C with a deterministic basis of inner derivations D_{b_i, b_j}.

    Basis selection: feed all D_{b_i,b_j}, i < j, in lexicographic order and
    keep those that enlarge the span (reproducible structure constants).
    """

    def __init__(self, C):
        self.C = C
        n = C.dim
        span = Subspace(n * n, C.field)
        mats, gens = [], []
        for i in range(n):
            for j in range(i + 1, n):
                D = inner_derivation(C, C.algebra.e(i), C.algebra.e(j))
                if span.add(flatten_matrix(D.matrix)):
                    mats.append(D.matrix)
                    gens.append((i, j))
        self.span = span
        self.matrices = mats
        self.generators = gens
        labels = ["D[%s,%s]" % (C.algebra.basis[i], C.algebra.basis[j]) for i, j in gens]
        sc = {}
        for a in range(len(mats)):
            for b in range(len(mats)):
                comm = mats[a] @ mats[b] - mats[b] @ mats[a]
                coords = self.coords_matrix(comm)
                row = {k: c for k, c in enumerate(coords) if c}
                if row:
                    sc[(a, b)] = row
        self.lie = SuperAlgebra(labels, sc, field=C.field,
                                name="der(%s)" % C.name, is_lie_claimed=True)

    @property
    def dim(self):
        return self.span.dim

    def coords_matrix(self, M):
        c = self.span.coords(flatten_matrix(M))
        if c is None:
            raise ValueError("matrix is not in der C")
        return c

    def coords_pair(self, a, b):
        """Coordinates of D_{a,b} in the chosen basis."""
        return self.coords_matrix(inner_derivation(self.C, a, b).matrix)


def derivation_algebra(C):
    """The Lie algebra der C spanned by the inner derivations D_{a,b}.

    Cached on the (immutable) algebra instance.
    """
    if not hasattr(C, "_der_alg"):
        C._der_alg = DerivationAlgebra(C)
    return C._der_alg


def s4_on_cayley(C):
    """The S4 embedding into Aut(split Cayley) on the distinguished basis."""
    if not C.has_cayley_labels or C.dim != 8:
        raise ValueError("s4_on_cayley needs the split Cayley algebra")
    alg = C.algebra
    f = C.field

    def act(images):
        cols = []
        for lbl in alg.basis:
            tgt, coef = images[lbl]
            v = [f.of(coef) * x for x in alg.e(tgt)]
            cols.append(v)
        return Matrix.from_columns(cols, f)

    fixed = {"e1": ("e1", 1), "e2": ("e2", 1)}
    tau1 = act({**fixed,
                "u0": ("u0", 1), "v0": ("v0", 1),
                "u1": ("u1", -1), "v1": ("v1", -1),
                "u2": ("u2", -1), "v2": ("v2", -1)})
    tau2 = act({**fixed,
                "u0": ("u0", -1), "v0": ("v0", -1),
                "u1": ("u1", 1), "v1": ("v1", 1),
                "u2": ("u2", -1), "v2": ("v2", -1)})
    phi = act({**fixed,
               "u0": ("u1", 1), "u1": ("u2", 1), "u2": ("u0", 1),
               "v0": ("v1", 1), "v1": ("v2", 1), "v2": ("v0", 1)})
    tau = act({**fixed,
               "u0": ("u0", -1), "u1": ("u2", -1), "u2": ("u1", -1),
               "v0": ("v0", -1), "v1": ("v2", -1), "v2": ("v1", -1)})
    return GroupAction(alg, tau1, tau2, phi, tau, name="S4 on C")
