"""Exact-arithmetic models of the exceptional Lie (super)algebras.

Split composition algebras, Jordan (super)algebras with normalized trace,
structurable algebras, the der C + (C0 x J0) + d_{J,J} construction with
its S4 symmetry, explicit coordinate-algebra isomorphisms, and the
Casimir-based so3-module decomposition -- everything over Q (or GF(p),
p >= 5) with strict equality checks throughout.
"""

from .exact import QQ, GF, Matrix, Subspace
from .algebra import (
    SuperAlgebra, LinearMap, Grading,
    check_super_jacobi, is_automorphism, is_derivation, check_grading, centralizer,
)
from .composition import (
    split_cayley, split_quaternion, binarion, ground, invariant_quaternion,
    inner_derivation, derivation_algebra, s4_on_cayley,
)
from .jordan import (
    JordanAlgebra, CubicAdmissible, h3, find_normalized_traces,
    jordan_super_jvtheta, jordan_super_dt, d2, kaplansky,
)
from .structurable import (
    AlgebraWithInvolution, a_of_j, a_of_cubic, tensor_product, check_structurable,
)
from .tits import tits, verify_lie_conditions, tits62_variant, TitsAlgebra
from .s4 import (
    GroupAction, klein_grading, coordinate_algebra, iota_maps,
    s4_on_h3, s4_on_tits_left, s4_on_tits_right,
)
from .isomorphisms import (
    IsomorphismError, InvolutionHomomorphism,
    theorem41, theorem61, tqj_maps, ak_to_ajv,
)
from .decompose import (
    hgd_matrices, s4_on_w, invariant_maps, decompose, extract_b1,
    assemble_b1, synthesize_s4, classical_examples, glw, B1Data,
)

__version__ = "0.1.0"
