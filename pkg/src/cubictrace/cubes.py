"""2x2x2 integer cubes and their three quadratic projections.

A cube is stored as a pair of 2x2 integer matrices (A, B): A is the front
face, B the back face.  The projections are

    Q1 = -det(A*x + B*y),
    Q2 = -det([A(x,y)^t | B(x,y)^t])        (columns),
    Q3 = -det([A^t(x,y)^t | B^t(x,y)^t]),

and all three share one discriminant, the discriminant of the cube.  The
group SL2(Z)^3 acts by (g1, g2, g3).(A, B) = g1-mix of (g3*A*g2^t, g3*B*g2^t),
preserving the discriminant.  For primitive projections the composition
Q1 * Q2 * Q3 is principal, and a cube class is faithfully described by the
triple of SL2-classes (q1, q2, q3); composition of cube classes is
componentwise Gauss composition on such triples.

A cubic form with both middle coefficients divisible by 3 -- written
(a0, 3a1, 3a2, a3) -- embeds as the symmetric cube with faces
[[a0,a1],[a1,a2]], [[a1,a2],[a2,a3]]; all three projections of that cube
equal phi1 = (a1^2-a0a2, a1a2-a0a3, a2^2-a1a3).  Its cube discriminant is
-1/27 times its cubic-form discriminant.  phi1 lands in the 3-torsion of the
narrow class group, and is onto it (surjectivity is probed here by a bounded
coefficient search).
"""

from dataclasses import dataclass

from .arith import Mat2, is_fundamental_discriminant, is_square
from .cforms import CubicForm
from .qforms import QuadraticForm, class_group, compose
from math import isqrt


def _mat_mul(m: Mat2, n: Mat2) -> Mat2:
    (a, b), (c, d) = m
    (e, f), (g, h) = n
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def _mat_t(m: Mat2) -> Mat2:
    (a, b), (c, d) = m
    return ((a, c), (b, d))


def _mat_det(m: Mat2) -> int:
    (a, b), (c, d) = m
    return a * d - b * c


def _lin_comb(r: int, m: Mat2, s: int, n: Mat2) -> Mat2:
    (a, b), (c, d) = m
    (e, f), (g, h) = n
    return ((r * a + s * e, r * b + s * f), (r * c + s * g, r * d + s * h))


@dataclass(frozen=True)
class Cube:
    """Front face A, back face B; projection discriminants agree by
    construction (asserted)."""

    A: Mat2
    B: Mat2

    def __post_init__(self):
        d1, d2, d3 = (q.disc for q in projections(self))
        assert d1 == d2 == d3

    def faces(self) -> tuple[Mat2, Mat2]:
        return (self.A, self.B)


def q1(c: Cube) -> QuadraticForm:
    (a, b), (cc, d) = c.A
    (e, f), (g, h) = c.B
    return QuadraticForm(b * cc - a * d, b * g + cc * f - a * h - d * e, f * g - e * h)


def q2(c: Cube) -> QuadraticForm:
    (a, b), (cc, d) = c.A
    (e, f), (g, h) = c.B
    return QuadraticForm(cc * e - a * g, cc * f + d * e - a * h - b * g, d * f - b * h)


def q3(c: Cube) -> QuadraticForm:
    (a, b), (cc, d) = c.A
    (e, f), (g, h) = c.B
    return QuadraticForm(b * e - a * f, b * g + d * e - a * h - cc * f, d * g - cc * h)


def projections(c: Cube) -> tuple[QuadraticForm, QuadraticForm, QuadraticForm]:
    return (q1(c), q2(c), q3(c))


def q_i(c: Cube, i: int) -> QuadraticForm:
    if i not in (1, 2, 3):
        raise ValueError("projection index must be 1, 2 or 3")
    return (q1, q2, q3)[i - 1](c)


def cube_disc(c: Cube) -> int:
    d1, d2, d3 = (q.disc for q in projections(c))
    assert d1 == d2 == d3
    return d1


def gamma_act(c: Cube, g1: Mat2, g2: Mat2, g3: Mat2) -> Cube:
    """(g1,g2,g3)-action: transform both faces by g3 * face * g2^t, then mix
    front/back by g1."""
    for g in (g1, g2, g3):
        if _mat_det(g) != 1:
            raise ValueError("cube action needs determinant +1 matrices")
    a1 = _mat_mul(_mat_mul(g3, c.A), _mat_t(g2))
    b1 = _mat_mul(_mat_mul(g3, c.B), _mat_t(g2))
    (r, s), (t, u) = g1
    out = Cube(_lin_comb(r, a1, s, b1), _lin_comb(t, a1, u, b1))
    assert cube_disc(out) == cube_disc(c)
    return out


# ---------------------------------------------------------------------------
# cubic forms with 3-divisible middle coefficients, and their symmetric cubes


@dataclass(frozen=True)
class GaussianCubicForm:
    """The cubic form (a0, 3*a1, 3*a2, a3)."""

    a0: int
    a1: int
    a2: int
    a3: int

    def cubic(self) -> CubicForm:
        return CubicForm(self.a0, 3 * self.a1, 3 * self.a2, self.a3)

    def coeffs(self) -> tuple[int, int, int, int]:
        return (self.a0, self.a1, self.a2, self.a3)


def gaussian_from_cubic(f: CubicForm) -> GaussianCubicForm:
    if f.b % 3 != 0 or f.c % 3 != 0:
        raise ValueError("middle coefficients must be divisible by 3")
    return GaussianCubicForm(f.a, f.b // 3, f.c // 3, f.d)


def gaussian_cube_disc(g: GaussianCubicForm) -> int:
    d = g.cubic().disc
    assert d % 27 == 0
    return -d // 27


def iota(g: GaussianCubicForm) -> Cube:
    """Symmetric cube of (a0, 3a1, 3a2, a3): faces [[a0,a1],[a1,a2]] and
    [[a1,a2],[a2,a3]]."""
    a0, a1, a2, a3 = g.coeffs()
    return Cube(((a0, a1), (a1, a2)), ((a1, a2), (a2, a3)))


def phi1(g: GaussianCubicForm) -> QuadraticForm:
    a0, a1, a2, a3 = g.coeffs()
    out = QuadraticForm(a1 * a1 - a0 * a2, a1 * a2 - a0 * a3, a2 * a2 - a1 * a3)
    assert out == q1(iota(g))
    return out


def field_cube(f: CubicForm) -> Cube:
    """The cube of a cubic ring's form F = (a,b,c,d): faces [[3a,b],[b,c]]
    and [[b,c],[c,3d]], i.e. the symmetric cube of 3F.  Its first projection
    is the Hessian of F."""
    c = iota(GaussianCubicForm(3 * f.a, f.b, f.c, 3 * f.d))
    assert q1(c) == f.hessian()
    return c


def c_cube(d: int) -> Cube:
    """A cube whose first projection is C_form(d): front [[0,3],[1,0]], back
    [[(d+3)/4, 3],[0,-1]] for odd d, [[d/4, 0],[0,-1]] for d = 0 mod 4."""
    if not is_fundamental_discriminant(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    front = ((0, 3), (1, 0))
    if d % 4 == 0:
        back = ((d // 4, 0), (0, -1))
    else:
        back = (((d + 3) // 4, 3), (0, -1))
    out = Cube(front, back)
    assert cube_disc(out) == -3 * d
    return out


# ---------------------------------------------------------------------------
# cube classes


@dataclass(frozen=True)
class CubeClass:
    """A cube orbit, recorded by the canonical SL2-class representatives of
    its three projections (their composition is principal)."""

    disc: int
    q1_class: QuadraticForm
    q2_class: QuadraticForm
    q3_class: QuadraticForm

    def triple(self):
        return (self.q1_class, self.q2_class, self.q3_class)


def cube_class(c: Cube) -> CubeClass:
    ps = projections(c)
    if any(not p.is_primitive for p in ps):
        raise ValueError("cube class needs primitive projections")
    disc = cube_disc(c)
    cg = class_group(disc)
    c1, c2, c3 = (cg.class_of(p) for p in ps)
    assert cg.op(cg.op(c1, c2), c3) == cg.identity
    return CubeClass(disc, c1, c2, c3)


def compose_classes(x: CubeClass, y: CubeClass) -> CubeClass:
    if x.disc != y.disc:
        raise ValueError("discriminant mismatch")
    cg = class_group(x.disc)
    c1 = cg.op(x.q1_class, y.q1_class)
    c2 = cg.op(x.q2_class, y.q2_class)
    c3 = cg.op(x.q3_class, y.q3_class)
    assert cg.op(cg.op(c1, c2), c3) == cg.identity
    return CubeClass(x.disc, c1, c2, c3)


def verify_grouprel2(f: CubicForm) -> dict:
    """Compose the field cube's class with the C_d cube's class; the first
    projection of the result must be the half trace form or its inverse."""
    from .tracelat import explicit_trace_form

    d = f.disc
    if d % 3 == 0:
        raise ValueError("requires 3 not dividing the discriminant")
    if not is_fundamental_discriminant(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    t = compose_classes(cube_class(field_cube(f)), cube_class(c_cube(d)))
    half = explicit_trace_form(f).binary
    cg = class_group(-3 * d)
    target = cg.class_of(half)
    got = t.q1_class
    if got == target:
        return {"holds": True, "sign": 1, "projection": got, "half": half}
    if got == cg.class_of(half.inverse):
        return {"holds": True, "sign": -1, "projection": got, "half": half}
    return {"holds": False, "sign": 0, "projection": got, "half": half}


# ---------------------------------------------------------------------------
# surjectivity of phi1 onto the 3-torsion


def three_torsion(delta: int) -> list[QuadraticForm]:
    cg = class_group(delta)
    return sorted(
        (x for x in cg.elements if cg.power(x, 3) == cg.identity),
        key=lambda f: f.coeffs(),
    )


def _a3_solutions(a0: int, a1: int, a2: int, delta: int):
    """Integer a3 with cube disc(a0,3a1,3a2,a3) = delta: the disc condition
    reads a0^2 a3^2 + (4a1^3 - 6a0a1a2) a3 + (4a0a2^3 - 3a1^2a2^2 - delta) = 0."""
    p = 4 * a1**3 - 6 * a0 * a1 * a2
    q = 4 * a0 * a2**3 - 3 * a1 * a1 * a2 * a2 - delta
    if a0 == 0:
        if p == 0:
            return
        if q % p == 0:
            yield -q // p
        return
    disc = p * p - 4 * a0 * a0 * q
    if disc < 0 or not is_square(disc):
        return
    r = isqrt(disc)
    den = 2 * a0 * a0
    for num in (-p + r, -p - r):
        if num % den == 0:
            yield num // den
        if r == 0:
            break


def phi1_surjectivity_search(delta: int, coeff_bound: int, keep: int = 6) -> dict:
    """Scan (a0, 3a1, 3a2, a3) with all |a_i| <= coeff_bound and cube
    discriminant delta; report which 3-torsion classes of Cl+(delta) the
    phi1 images reach."""
    if not is_fundamental_discriminant(delta):
        raise ValueError(f"{delta} is not a fundamental discriminant")
    cg = class_group(delta)
    torsion = three_torsion(delta)
    hits: dict[QuadraticForm, list[tuple[int, int, int, int]]] = {t: [] for t in torsion}
    counts = {t: 0 for t in torsion}
    b = coeff_bound
    for a0 in range(-b, b + 1):
        for a1 in range(-b, b + 1):
            for a2 in range(-b, b + 1):
                for a3 in _a3_solutions(a0, a1, a2, delta):
                    if abs(a3) > b:
                        continue
                    g = GaussianCubicForm(a0, a1, a2, a3)
                    assert gaussian_cube_disc(g) == delta
                    cls = cg.class_of(phi1(g))
                    assert cls in counts  # phi1 image is 3-torsion
                    counts[cls] += 1
                    if len(hits[cls]) < keep:
                        hits[cls].append(g.coeffs())
    missing = [t for t in torsion if counts[t] == 0]
    return {
        "delta": delta,
        "coeff_bound": coeff_bound,
        "torsion_classes": torsion,
        "hits": hits,
        "counts": counts,
        "missing": missing,
        "surjective_in_box": not missing,
    }
