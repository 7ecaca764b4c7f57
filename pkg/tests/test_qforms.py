import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import oracle_quadratic_disc, represents, unimodular_st

from cubictrace.arith import MAT2_FLIP_Y, MAT2_ID
from cubictrace.qforms import (
    ClassGroup,
    QuadraticForm,
    canonical_class_rep,
    class_group,
    compose,
    definite_automorphs,
    fundamental_automorph,
    gl2_equivalent,
    identity_form,
    is_reduced_definite,
    is_reduced_indefinite,
    proper_equivalent,
    reduce_form,
    reduction_cycle,
    rho,
)

# class numbers of definite forms, from standard tables
H_DEFINITE = {
    -3: 1, -4: 1, -7: 1, -8: 1, -11: 1, -15: 2, -19: 1, -20: 2, -23: 3,
    -24: 2, -31: 3, -35: 2, -39: 4, -40: 2, -43: 1, -47: 5, -52: 2,
    -56: 4, -59: 3, -67: 1, -71: 7, -84: 4, -163: 1,
}

# narrow class numbers of real quadratic fields: h+ = h when the fundamental
# unit has norm -1, else 2h
H_NARROW = {
    5: 1, 8: 1, 12: 2, 13: 1, 17: 1, 21: 2, 24: 2, 28: 2, 29: 1,
    33: 2, 40: 2, 41: 1, 44: 2, 60: 4, 229: 3,
}

nonsquare_disc_st = st.integers(-300, 300).filter(
    lambda d: d % 4 in (0, 1) and d != 0 and not (d > 0 and int(d**0.5) ** 2 == d)
)


def forms_of_disc(d, count=4):
    """A few primitive forms of discriminant d, found by direct scan."""
    out = []
    for a in range(1, 30):
        for sa in (a, -a) if d > 0 else (a,):
            for b in range(-2 * abs(sa), 2 * abs(sa) + 1):
                if (b * b - d) % (4 * sa) == 0:
                    c = (b * b - d) // (4 * sa)
                    f = QuadraticForm(sa, b, c)
                    if f.is_primitive:
                        out.append(f)
                        if len(out) >= count:
                            return out
    return out


# ---------------------------------------------------------------------------
# basics


def test_disc_and_call():
    f = QuadraticForm(2, -1, 3)
    assert f.disc == oracle_quadratic_disc(2, -1, 3) == -23
    assert f(1, 1) == 4


@given(st.tuples(st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30)), unimodular_st)
@settings(max_examples=200)
def test_transform_matches_substitution(coeffs, m):
    f = QuadraticForm(*coeffs)
    g = f.transform(m)
    (r, s), (t, u) = m
    for x, y in [(1, 0), (0, 1), (1, 1), (2, -3), (-1, 4)]:
        assert g(x, y) == f(r * x + s * y, t * x + u * y)
    assert g.disc == f.disc


def test_inverse_and_content():
    f = QuadraticForm(2, 1, 3)
    assert f.inverse == QuadraticForm(2, -1, 3)
    assert f.inverse == f.transform(MAT2_FLIP_Y)
    assert QuadraticForm(4, 6, 2).content == 2
    assert QuadraticForm(4, 6, 2).primitive_part == QuadraticForm(2, 3, 1)
    assert f.is_primitive and not QuadraticForm(4, 6, 2).is_primitive


def test_identity_form():
    assert identity_form(-23) == QuadraticForm(1, 1, 6)
    assert identity_form(-4) == QuadraticForm(1, 0, 1)
    assert identity_form(12) == QuadraticForm(1, 0, -3)
    assert identity_form(13) == QuadraticForm(1, 1, -3)
    for d in (-23, -4, 12, 13):
        assert identity_form(d).disc == d


# ---------------------------------------------------------------------------
# reduction


@given(nonsquare_disc_st, st.integers(0, 3))
@settings(max_examples=150)
def test_reduce_form_reduces_with_witness(d, i):
    fs = forms_of_disc(d)
    if i >= len(fs):
        return
    f = fs[i]
    red, m = reduce_form(f)
    assert f.transform(m) == red
    if d < 0:
        assert is_reduced_definite(red)
    else:
        assert is_reduced_indefinite(red)


def test_definite_reduction_canonical_on_class():
    # equivalent definite forms reduce to the same canonical representative
    f = QuadraticForm(2, 1, 3)
    for m in [((1, 2), (0, 1)), ((1, 0), (3, 1)), ((2, 1), (1, 1))]:
        red, _ = reduce_form(f.transform(m))
        assert red == reduce_form(f)[0]


def test_rho_preserves_class():
    f = QuadraticForm(3, 1, -19)  # disc 229
    g, m = rho(f)
    assert f.transform(m) == g
    cyc = reduction_cycle(f)
    assert len(cyc) >= 1 and len(set(cyc)) == len(cyc)
    # cycle is closed: rho of the last reduced form returns to the first
    h, _ = rho(cyc[-1])
    assert h == cyc[0]


def test_indefinite_cycle_separates_classes():
    cg = class_group(229)
    assert cg.order == 3
    reps = cg.elements
    cycles = [set(reduction_cycle(r)) for r in reps]
    for c1, c2 in itertools.combinations(cycles, 2):
        assert not (c1 & c2)


# ---------------------------------------------------------------------------
# equivalence


@given(nonsquare_disc_st, unimodular_st)
@settings(max_examples=150)
def test_proper_equivalent_on_planted_pairs(d, m):
    fs = forms_of_disc(d, count=1)
    if not fs:
        return
    f = fs[0]
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    g = f.transform(m)
    ok, w = proper_equivalent(f, g)
    ok_gl, _ = gl2_equivalent(f, g)
    assert ok_gl
    if det == 1:
        assert ok and f.transform(w) == g


def test_proper_equivalent_negative_case():
    # distinct classes of disc -23
    assert not proper_equivalent(QuadraticForm(1, 1, 6), QuadraticForm(2, 1, 3))[0]
    ok, w = proper_equivalent(QuadraticForm(2, 1, 3), QuadraticForm(2, -1, 3))
    assert not ok  # inverse classes in an order-3 group are distinct
    ok, w = gl2_equivalent(QuadraticForm(2, 1, 3), QuadraticForm(2, -1, 3))
    assert ok  # but GL2-equivalent via the improper flip


def test_automorphs():
    f = QuadraticForm(1, 0, 1)
    autos = definite_automorphs(f)
    assert len(autos) == 4  # +-id, +-rotation
    for m in autos:
        assert f.transform(m) == f
    g = QuadraticForm(1, 1, -1)  # disc 5
    a = fundamental_automorph(g)
    assert a not in (MAT2_ID, MAT2_FLIP_Y)
    assert g.transform(a) == g


# ---------------------------------------------------------------------------
# composition and class groups


def test_known_definite_class_numbers():
    for d, h in H_DEFINITE.items():
        assert class_group(d).order == h, d


def test_known_narrow_class_numbers():
    for d, h in H_NARROW.items():
        assert class_group(d).order == h, d


def test_invariant_factors_examples():
    assert class_group(-3299).invariant_factors() == (3, 9)
    assert class_group(-3299).order == 27
    assert class_group(-84).invariant_factors() == (2, 2)
    assert class_group(-23).invariant_factors() == (3,)
    assert class_group(-3).invariant_factors() == ()
    assert class_group(229).invariant_factors() == (3,)


def test_three_rank():
    assert class_group(-3299).three_rank() == 2
    assert class_group(-23).three_rank() == 1
    assert class_group(-4).three_rank() == 0
    assert class_group(229).three_rank() == 1


@given(st.integers(-250, -3), st.integers(0, 5), st.integers(0, 5))
@settings(max_examples=100, deadline=None)
def test_composition_represents_products(d, i, j):
    if d % 4 not in (0, 1):
        return
    cg = class_group(d)
    els = cg.elements
    f, g = els[i % len(els)], els[j % len(els)]
    h = cg.op(f, g)
    # the composed class represents every product of represented values;
    # a positive-definite reduced form needs |x|,|y| <= sqrt(2v) to hit v
    v = f(1, 0) * g(1, 1)
    assert v > 0
    box = int((2 * v) ** 0.5) + 1
    assert represents(h, v, box=box)


def group_axioms(cg: ClassGroup, triples=None):
    els = cg.elements
    e = cg.identity
    table = {}
    for x in els:
        assert cg.op(e, x) == x
        inv = canonical_class_rep(x.inverse)
        assert cg.op(x, inv) == e
        for y in els:
            z = table[(x, y)] = cg.op(x, y)
            assert z in set(els)
            assert table.get((y, x), z) == z  # abelian
    trip = triples or itertools.product(els, repeat=3)
    for x, y, z in trip:
        assert cg.op(table[(x, y)], z) == cg.op(x, table[(y, z)])


def test_group_axioms_sampled_discs():
    for d in (-23, -47, -84, -163, -3299, 12, 60, 229):
        cg = class_group(d)
        if cg.order <= 9:
            group_axioms(cg)
        else:
            els = cg.elements
            trip = [(els[i % len(els)], els[(i * 7 + 1) % len(els)], els[(i * 13 + 2) % len(els)])
                    for i in range(60)]
            group_axioms(cg, triples=trip)


def test_class_of_constant_on_class():
    cg = class_group(-23)
    f = QuadraticForm(2, 1, 3)
    for m in [((1, 1), (0, 1)), ((1, 0), (-2, 1)), ((3, 1), (2, 1))]:
        assert cg.class_of(f.transform(m)) == cg.class_of(f)


def test_order_of_and_subgroup():
    cg = class_group(-47)
    f = cg.class_of(QuadraticForm(2, 1, 6))
    assert cg.order_of(f) == 5
    assert len(cg.subgroup_generated(f)) == 5
    assert cg.order_of(cg.identity) == 1
    assert cg.power(f, 5) == cg.identity
    assert cg.power(f, -1) == canonical_class_rep(f.inverse)


def test_class_group_rejects_bad_disc():
    with pytest.raises(ValueError):
        class_group(7)  # 7 % 4 == 3, not a discriminant
    with pytest.raises(ValueError):
        class_group(16)  # square
    with pytest.raises(ValueError):
        class_group(0)


def test_compose_requires_same_disc():
    with pytest.raises(ValueError):
        compose(QuadraticForm(1, 1, 6), QuadraticForm(1, 0, 1))


def test_compose_imprimitive_rejected():
    with pytest.raises(ValueError):
        compose(QuadraticForm(2, 2, 2), QuadraticForm(2, 2, 2))
