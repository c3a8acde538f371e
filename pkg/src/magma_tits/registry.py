"""Named constructors for the CLI and tests, with process-wide caching.

Composition algebras: cayley, quaternion, binarion, ground, quatq.
Jordan: h3:<comp>, jvtheta, d2, dt:<num>/<den>, kaplansky.
With involution: aj:<jordan>, tensor:<comp>:<comp>, ak.
Lie algebras: tits:<comp>:<jordan>, t62:<jordan>, glw, so:<dimU>, sl:<dimU>,
sp:<dimU>.
"""

from fractions import Fraction

from .exact import QQ
from . import composition, jordan, structurable
from .tits import tits as build_tits, tits62_variant
from .decompose import glw as build_glw, classical_examples


_CACHE = {}


def _field_key(field):
    return "QQ" if field.is_rational else "GF%d" % field.p


def _cached(name, field, builder):
    key = (name, _field_key(field))
    if key not in _CACHE:
        _CACHE[key] = builder()
    return _CACHE[key]


COMPOSITION_NAMES = ("cayley", "quaternion", "binarion", "ground", "quatq")


def composition_by_name(name, field=QQ):
    builders = {
        "cayley": composition.split_cayley,
        "quaternion": composition.split_quaternion,
        "binarion": composition.binarion,
        "ground": composition.ground,
        "quatq": composition.invariant_quaternion,
    }
    if name not in builders:
        raise KeyError("unknown composition algebra %r" % name)
    return _cached("comp:" + name, field, lambda: builders[name](field))


def jordan_by_name(name, field=QQ):
    def build():
        if name.startswith("h3:"):
            return jordan.h3(composition_by_name(name[3:], field))
        if name == "jvtheta":
            return jordan.jordan_super_jvtheta(field)
        if name == "d2":
            return jordan.d2(field)
        if name.startswith("dt:"):
            return jordan.jordan_super_dt(Fraction(name[3:]), field)
        raise KeyError("unknown Jordan algebra %r" % name)

    return _cached("jordan:" + name, field, build)


def tits_by_name(comp_name, jordan_name, field=QQ):
    def build():
        C = composition_by_name(comp_name, field)
        J = jordan_by_name(jordan_name, field)
        return build_tits(C, J)

    return _cached("tits:%s:%s" % (comp_name, jordan_name), field, build)


def involution_algebra_by_name(name, field=QQ):
    def build():
        if name.startswith("aj:"):
            return structurable.a_of_j(jordan_by_name(name[3:], field))
        if name == "ak":
            return structurable.a_of_cubic(jordan.kaplansky(field))
        if name.startswith("tensor:"):
            _, a, b = name.split(":")
            return structurable.tensor_product(composition_by_name(a, field),
                                               composition_by_name(b, field))
        raise KeyError("unknown algebra with involution %r" % name)

    return _cached("awi:" + name, field, build)


def lie_with_triple(name, field=QQ):
    """(SuperAlgebra, so3 triple or None) for the decomposer CLI."""
    def build():
        if name == "glw":
            return build_glw(field)
        if name.startswith("so:"):
            return classical_examples("orthogonal", int(name[3:]), field)
        if name.startswith("sl:"):
            return classical_examples("special", int(name[3:]), field)
        if name.startswith("sp:"):
            return classical_examples("symplectic", int(name[3:]), field)
        raise KeyError("unknown Lie algebra %r" % name)

    return _cached("lie:" + name, field, build)


def superalgebra_by_name(name, field=QQ):
    """The underlying SuperAlgebra of any registry name (for export)."""
    if name in COMPOSITION_NAMES:
        return composition_by_name(name, field).algebra
    if name.startswith(("h3:",)) or name in ("jvtheta", "d2") or name.startswith("dt:"):
        return jordan_by_name(name, field).algebra
    if name == "kaplansky":
        return _cached("kaplansky", field, lambda: jordan.kaplansky(field)).algebra
    if name.startswith(("aj:", "tensor:")) or name == "ak":
        return involution_algebra_by_name(name, field).algebra
    if name.startswith("tits:"):
        _, comp_name, rest = name.split(":", 2)
        return tits_by_name(comp_name, rest, field).algebra
    if name.startswith("t62:"):
        J = jordan_by_name(name[4:], field)
        Q = composition_by_name("quatq", field)
        return _cached(name, field, lambda: tits62_variant(Q, J)).algebra
    if name in ("glw",) or name.startswith(("so:", "sl:", "sp:")):
        return lie_with_triple(name, field)[0]
    raise KeyError("unknown algebra name %r" % name)
