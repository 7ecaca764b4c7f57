"""Cubic-field-level services on top of cubic forms: per-field records,
prime splitting types, isomorphism decisions with certificates, and the
count-vs-class-group check (the number of cubic fields of fundamental
discriminant d is (3^r - 1)/2 with r the 3-rank of the quadratic class
group of discriminant d).

Splitting is computed on the binary form mod p -- the degree pattern of its
irreducible factors over the prime field, with the point at infinity (the
y-factor when p | a) counted like any other root -- so no monicization and
no special case for p dividing the leading coefficient.  Two forms of the
same field have the same pattern at every prime, so a prime where the
patterns differ certifies non-isomorphism.
"""

from dataclasses import dataclass

from .arith import is_fundamental_discriminant, is_prime, primes_up_to
from .cforms import CubicForm, cubic_equivalent, fields_by_discriminant, shape_mod_p
from .qforms import QuadraticForm, class_group, gl2_equivalent
from .tracelat import TraceZeroForm, explicit_trace_form, trace_zero_sublattice


class Undecided(Exception):
    """Raised when an isomorphism question exhausts its search bounds
    without a witness either way; never silently coerced to a boolean."""


_SHAPE_LABELS = {
    ((3, 1),): "3",
    ((1, 1), (2, 1)): "21",
    ((1, 1), (1, 1), (1, 1)): "111",
    ((1, 1), (1, 2)): "1^2 1",
    ((1, 3),): "1^3",
}


@dataclass(frozen=True)
class SplittingType:
    label: str
    shape: tuple

    def __post_init__(self):
        assert sum(deg * mult for deg, mult in self.shape) == 3

    @property
    def is_squarefree(self) -> bool:
        return all(mult == 1 for _, mult in self.shape)

    @property
    def has_linear_factor(self) -> bool:
        return any(deg == 1 for deg, _ in self.shape)


def splitting_type(f: CubicForm, p: int) -> SplittingType:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    shape = shape_mod_p(f, p)
    return SplittingType(_SHAPE_LABELS[shape], shape)


def is_isomorphic(f: CubicForm, g: CubicForm) -> bool:
    """Same field iff the forms are GL2(Z)-equivalent.  Raises Undecided if
    the equivalence search exhausts its bounds."""
    status, _ = cubic_equivalent(f, g)
    if status == "inconclusive":
        raise Undecided(f"equivalence of {f.coeffs()} and {g.coeffs()} not settled")
    return status == "equivalent"


def distinguishing_prime(f: CubicForm, g: CubicForm, p_max: int = 1000):
    """Smallest prime p <= p_max, unramified (p not dividing the common
    discriminant), where the splitting types differ; None if there is none."""
    if f.disc != g.disc:
        raise ValueError("forms must share a discriminant")
    d = f.disc
    for p in primes_up_to(p_max):
        if d % p == 0:
            continue
        if shape_mod_p(f, p) != shape_mod_p(g, p):
            return p
    return None


@dataclass(frozen=True)
class CubicFieldRecord:
    form: CubicForm
    disc: int
    signature: str  # "totally-real" or "complex"
    trace_zero: TraceZeroForm
    hessian_class: QuadraticForm

    def __post_init__(self):
        assert self.disc == self.form.disc
        assert self.signature == ("totally-real" if self.disc > 0 else "complex")
        assert self.trace_zero.binary.disc == -3 * self.disc


def make_record(f: CubicForm) -> CubicFieldRecord:
    if not f.is_primitive:
        raise ValueError(f"{f.coeffs()} is imprimitive")
    if not f.is_irreducible:
        raise ValueError(f"{f.coeffs()} is reducible")
    d = f.disc
    if not is_fundamental_discriminant(d):
        raise ValueError(f"discriminant {d} is not fundamental")
    explicit = explicit_trace_form(f)
    kernel = trace_zero_sublattice(f)
    assert explicit.binary.content == kernel.binary.content
    same, _ = gl2_equivalent(explicit.binary.primitive_part, kernel.binary.primitive_part)
    assert same
    cg = class_group(-3 * d)
    return CubicFieldRecord(
        form=f,
        disc=d,
        signature="totally-real" if d > 0 else "complex",
        trace_zero=explicit,
        hessian_class=cg.class_of(f.hessian()),
    )


def hasse_count_check(d: int) -> dict:
    """Number of cubic fields of fundamental discriminant d versus
    (3^r - 1)/2, r the 3-rank of the quadratic class group of d."""
    if not is_fundamental_discriminant(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    found = len(fields_by_discriminant(d, d).get(d, []))
    r = class_group(d).three_rank()
    predicted = (3**r - 1) // 2
    return {"d": d, "fields_found": found, "predicted": predicted, "ok": found == predicted}
