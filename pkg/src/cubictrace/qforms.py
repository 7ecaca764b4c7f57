"""Binary quadratic forms over Z.

Covers both signs of the discriminant with exact integer arithmetic:
reduction (with unimodular witness matrices), the rho-operator and reduction
cycles for indefinite forms, Gauss/Dirichlet composition via congruence
solving, proper (SL2) and improper (GL2) equivalence tests, and class groups
by enumeration of reduced forms.

A form (a, b, c) stands for a*x^2 + b*x*y + c*y^2.  The substitution action is
on the right: (f|M)(x, y) = f(alpha*x + beta*y, gamma*x + delta*y) for
M = ((alpha, beta), (gamma, delta)), so f|(M*N) = (f|M)|N.

Square positive discriminants are rejected: the reduction cycle machinery
assumes sqrt(disc) is irrational, and nothing downstream needs split forms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .arith import (
    MAT2_FLIP_Y,
    MAT2_ID,
    Mat2,
    content,
    divisors,
    is_square,
    mat2_det,
    mat2_inv,
    mat2_mul,
    solve_linear_congruence,
)

_MAX_REDUCTION_STEPS = 100_000


@dataclass(frozen=True, order=True)
class QuadraticForm:
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def transform(self, m: Mat2) -> "QuadraticForm":
        """Right substitution f|M."""
        (r, s), (t, u) = m
        a, b, c = self.a, self.b, self.c
        return QuadraticForm(
            a * r * r + b * r * t + c * t * t,
            2 * a * r * s + b * (r * u + s * t) + 2 * c * t * u,
            a * s * s + b * s * u + c * u * u,
        )

    def __neg__(self) -> "QuadraticForm":
        return QuadraticForm(-self.a, -self.b, -self.c)

    @property
    def inverse(self) -> "QuadraticForm":
        return QuadraticForm(self.a, -self.b, self.c)

    @property
    def content(self) -> int:
        return content((self.a, self.b, self.c))

    @property
    def is_primitive(self) -> bool:
        return self.content == 1

    @property
    def primitive_part(self) -> "QuadraticForm":
        g = self.content
        if g in (0, 1):
            return self
        return QuadraticForm(self.a // g, self.b // g, self.c // g)

    @property
    def is_definite(self) -> bool:
        return self.disc < 0

    @property
    def is_positive_definite(self) -> bool:
        return self.disc < 0 and self.a > 0

    def scaled(self, k: int) -> "QuadraticForm":
        return QuadraticForm(k * self.a, k * self.b, k * self.c)

    def coeffs(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)


def identity_form(d: int) -> QuadraticForm:
    """The principal form of discriminant d."""
    if d % 4 == 0:
        return QuadraticForm(1, 0, -d // 4)
    if d % 4 == 1:
        return QuadraticForm(1, 1, (1 - d) // 4)
    raise ValueError(f"{d} is not a discriminant (need d == 0 or 1 mod 4)")


def _check_usable_disc(d: int) -> None:
    if d == 0 or (d > 0 and is_square(d)):
        raise ValueError(f"degenerate discriminant {d}: zero or a perfect square")


# ---------------------------------------------------------------------------
# reduction, definite case


def is_reduced_definite(f: QuadraticForm) -> bool:
    a, b, c = f.a, f.b, f.c
    if not (abs(b) <= a <= c):
        return False
    if b < 0 and (abs(b) == a or a == c):
        return False
    return True


def _reduce_positive_definite(f: QuadraticForm) -> tuple[QuadraticForm, Mat2]:
    assert f.disc < 0 and f.a > 0
    m = MAT2_ID
    g = f
    for _ in range(_MAX_REDUCTION_STEPS):
        # translate b into (-a, a]
        if not (-g.a < g.b <= g.a):
            r = (g.a - g.b) // (2 * g.a)
            t = ((1, r), (0, 1))
            g, m = g.transform(t), mat2_mul(m, t)
        if g.a > g.c or (g.a == g.c and g.b < 0):
            s = ((0, -1), (1, 0))
            g, m = g.transform(s), mat2_mul(m, s)
            continue
        if is_reduced_definite(g):
            return g, m
    raise ArithmeticError("definite reduction did not terminate")  # pragma: no cover


# ---------------------------------------------------------------------------
# reduction, indefinite case (rho operator and cycles)


def is_reduced_indefinite(f: QuadraticForm) -> bool:
    """0 < b < sqrt(d) and |sqrt(d) - 2|a|| < b, by integer comparisons."""
    d = f.disc
    assert d > 0 and not is_square(d)
    s = math.isqrt(d)
    b, aa = f.b, abs(f.a)
    return 1 <= b <= s and b + 2 * aa >= s + 1 and 2 * aa - b <= s


def rho(f: QuadraticForm) -> tuple[QuadraticForm, Mat2]:
    """One reduction step (a,b,c) -> (c, r, (r*r-d)//(4*c)) with witness."""
    d = f.disc
    _check_usable_disc(d)
    assert d > 0
    s = math.isqrt(d)
    a, b, c = f.a, f.b, f.c
    assert c != 0
    mod = 2 * abs(c)
    r = (-b) % mod  # in [0, mod)
    if abs(c) > s:
        if r > abs(c):
            r -= mod
    else:
        r += ((s - r) // mod) * mod  # largest value <= s in the class
    g = QuadraticForm(c, r, (r * r - d) // (4 * c))
    w: Mat2 = ((0, -1), (1, (b + r) // (2 * c)))
    assert f.transform(w) == g
    return g, w


def _reduce_indefinite(f: QuadraticForm) -> tuple[QuadraticForm, Mat2]:
    g, m = f, MAT2_ID
    for _ in range(_MAX_REDUCTION_STEPS):
        if is_reduced_indefinite(g):
            return g, m
        g, w = rho(g)
        m = mat2_mul(m, w)
    raise ArithmeticError("indefinite reduction did not terminate")  # pragma: no cover


def reduce_form(f: QuadraticForm) -> tuple[QuadraticForm, Mat2]:
    """Reduce f, returning (reduced, M) with det(M) = +1 and f|M = reduced.

    Negative definite forms are handled through their negatives (same witness).
    """
    d = f.disc
    _check_usable_disc(d)
    if d < 0:
        if f.a > 0:
            return _reduce_positive_definite(f)
        red, m = _reduce_positive_definite(-f)
        return -red, m
    return _reduce_indefinite(f)


def reduction_cycle(f: QuadraticForm) -> list[QuadraticForm]:
    """The full rho-cycle of reduced forms properly equivalent to f (disc > 0)."""
    start, _ = reduce_form(f)
    cycle = [start]
    g, _ = rho(start)
    for _ in range(_MAX_REDUCTION_STEPS):
        if g == start:
            return cycle
        cycle.append(g)
        g, _ = rho(g)
    raise ArithmeticError("rho cycle did not close")  # pragma: no cover


def fundamental_automorph(f: QuadraticForm) -> Mat2:
    """Generator (mod +-1) of the proper automorphism group of an indefinite f:
    the witness product for one full trip around the reduction cycle."""
    start, m0 = reduce_form(f)
    g, m = rho(start)
    for _ in range(_MAX_REDUCTION_STEPS):
        if g == start:
            eta = mat2_mul(mat2_mul(m0, m), mat2_inv(m0))
            assert f.transform(eta) == f
            return eta
        g2, w = rho(g)
        g, m = g2, mat2_mul(m, w)
    raise ArithmeticError("rho cycle did not close")  # pragma: no cover


def definite_automorphs(f: QuadraticForm) -> list[Mat2]:
    """All proper automorphs of a definite form (order 2, 4 or 6)."""
    d = f.primitive_part.disc
    assert d < 0
    # solutions of t*t - d*u*u = 4 exist only for u in {0, +-1} once d < -4
    sols = [(2, 0), (-2, 0)]
    for u in (1, -1):
        tt = 4 + d * u * u
        if tt >= 0 and is_square(tt):
            t = math.isqrt(tt)
            for tv in {t, -t}:
                sols.append((tv, u))
    a, b, c = f.primitive_part.coeffs()
    out = []
    for t, u in sols:
        if (t - b * u) % 2 or (t + b * u) % 2:
            continue
        m: Mat2 = (((t - b * u) // 2, -c * u), (a * u, (t + b * u) // 2))
        if f.transform(m) == f and m not in out:
            out.append(m)
    return out


# ---------------------------------------------------------------------------
# equivalence


def proper_equivalent(f: QuadraticForm, g: QuadraticForm) -> tuple[bool, Mat2 | None]:
    """SL2(Z)-equivalence with witness: returns (True, M) with f|M = g, det M = 1."""
    if f.disc != g.disc or f.content != g.content:
        return False, None
    d = f.disc
    _check_usable_disc(d)
    if d < 0:
        if (f.a > 0) != (g.a > 0):
            return False, None
        rf, mf = reduce_form(f)
        rg, mg = reduce_form(g)
        if rf != rg:
            return False, None
        m = mat2_mul(mf, mat2_inv(mg))
        assert f.transform(m) == g
        return True, m
    rf, mf = reduce_form(f)
    rg, mg = reduce_form(g)
    walk, acc = rg, MAT2_ID
    for _ in range(_MAX_REDUCTION_STEPS):
        if walk == rf:
            # f|mf = rf = rg|acc^-1 ... assemble f -> g
            m = mat2_mul(mat2_mul(mf, mat2_inv(acc)), mat2_inv(mg))
            assert f.transform(m) == g
            return True, m
        walk, w = rho(walk)
        acc = mat2_mul(acc, w)
        if walk == rg:
            return False, None
    raise ArithmeticError("cycle walk did not terminate")  # pragma: no cover


def gl2_equivalent(f: QuadraticForm, g: QuadraticForm) -> tuple[bool, Mat2 | None]:
    """GL2(Z)-equivalence with witness (det +1 or -1)."""
    ok, m = proper_equivalent(f, g)
    if ok:
        return ok, m
    ok, m = proper_equivalent(f.transform(MAT2_FLIP_Y), g)
    if ok:
        m = mat2_mul(MAT2_FLIP_Y, m)
        assert f.transform(m) == g and mat2_det(m) == -1
        return True, m
    return False, None


# ---------------------------------------------------------------------------
# composition


def compose_raw(f: QuadraticForm, g: QuadraticForm) -> QuadraticForm:
    """Dirichlet composition of two primitive forms of the same discriminant.

    Solves the standard congruence system; the result is exact but not
    reduced.  Indefinite inputs are first moved to a positive leading
    coefficient inside their class so every modulus below is positive.
    """
    if f.disc != g.disc:
        raise ValueError("composition needs equal discriminants")
    if not (f.is_primitive and g.is_primitive):
        raise ValueError("composition is defined for primitive forms")
    d = f.disc
    _check_usable_disc(d)

    def positive_leading(h: QuadraticForm) -> QuadraticForm:
        if h.a > 0:
            return h
        # reduced indefinite forms alternate the sign of a along the cycle
        r, _ = reduce_form(h)
        if r.a < 0:
            r, _ = rho(r)
        assert r.a > 0
        return r

    f1 = positive_leading(f) if d > 0 else f
    g1 = positive_leading(g) if d > 0 else g
    if d < 0 and (f1.a < 0 or g1.a < 0):
        raise ValueError("definite composition expects positive definite forms")

    a1, b1, c1 = f1.coeffs()
    a2, b2, c2 = g1.coeffs()
    e = (b1 + b2) // 2
    h = (b2 - b1) // 2
    w = math.gcd(math.gcd(a1, a2), e)
    s, t, u = a1 // w, a2 // w, e // w
    # solve t*u*k == h*u + s*c1 (mod s*t), refining k mod s afterwards
    sol = solve_linear_congruence(t * u, h * u + s * c1, s * t)
    assert sol is not None, "composition congruence must be solvable"
    k0, step = sol
    sol2 = solve_linear_congruence(t * step, h - t * k0, s)
    assert sol2 is not None
    n0, _ = sol2
    k = k0 + step * n0
    ell = (t * k - h) // s
    mm = (t * u * k - h * u - s * c1) // (s * t)
    a3 = s * t
    b3 = w * u - (k * t + ell * s)
    c3 = k * ell - w * mm
    result = QuadraticForm(a3, b3, c3)
    assert result.disc == d
    return result


def compose(f: QuadraticForm, g: QuadraticForm) -> QuadraticForm:
    """Composition followed by reduction (canonical only in the definite case)."""
    return reduce_form(compose_raw(f, g))[0]


# ---------------------------------------------------------------------------
# class groups


def canonical_class_rep(f: QuadraticForm) -> QuadraticForm:
    """A canonical representative of the proper equivalence class of f:
    the reduced form (definite) or the lexicographically least form of the
    reduction cycle (indefinite)."""
    d = f.disc
    _check_usable_disc(d)
    if d < 0:
        return reduce_form(f)[0]
    return min(reduction_cycle(f))


def reduced_forms(d: int, primitive_only: bool = True) -> list[QuadraticForm]:
    """All reduced forms of discriminant d (positive definite ones for d < 0)."""
    _check_usable_disc(d)
    out = []
    if d < 0:
        b = d & 1
        while 3 * b * b <= -d:
            m4 = b * b - d
            assert m4 % 4 == 0
            m = m4 // 4
            for a in divisors(m):
                if a * a > m:
                    break
                if a < max(b, 1):
                    continue
                c = m // a
                forms = [QuadraticForm(a, b, c)]
                if 0 < b < a < c:
                    forms.append(QuadraticForm(a, -b, c))
                out.extend(forms)
            b += 2
    else:
        s = math.isqrt(d)
        b = s if (s - d) % 2 == 0 else s - 1  # largest b <= s with b == d (mod 2)
        while b >= 1:
            n = (d - b * b) // 4
            lo = max(1, -((b - s - 1) // 2))  # ceil((s + 1 - b) / 2)
            hi = (s + b) // 2
            for a in divisors(n):
                if a > hi:
                    break
                if a < lo or n % a:
                    continue
                c = n // a
                out.append(QuadraticForm(a, b, -c))
                out.append(QuadraticForm(-a, b, c))
            b -= 2
    if primitive_only:
        out = [f for f in out if f.is_primitive]
    for f in out:
        assert f.disc == d
    return sorted(out)


class ClassGroup:
    """The form class group of discriminant d (the narrow group for d > 0),
    as canonical representatives with composition."""

    def __init__(self, d: int):
        _check_usable_disc(d)
        if d % 4 not in (0, 1):
            raise ValueError(f"{d} is not a discriminant")
        self.disc = d
        forms = reduced_forms(d)
        if d < 0:
            self.elements = forms
        else:
            seen: set[QuadraticForm] = set()
            reps = []
            for f in forms:
                if f in seen:
                    continue
                cyc = reduction_cycle(f)
                seen.update(cyc)
                reps.append(min(cyc))
            self.elements = sorted(reps)
        self.identity = canonical_class_rep(identity_form(d))
        assert self.identity in set(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def class_of(self, f: QuadraticForm) -> QuadraticForm:
        if f.disc != self.disc:
            raise ValueError("discriminant mismatch")
        return canonical_class_rep(f)

    def op(self, x: QuadraticForm, y: QuadraticForm) -> QuadraticForm:
        return canonical_class_rep(compose_raw(x, y))

    def power(self, x: QuadraticForm, k: int) -> QuadraticForm:
        if k < 0:
            return self.power(x.inverse, -k)
        out, base = self.identity, self.class_of(x)
        while k:
            if k & 1:
                out = self.op(out, base)
            base = self.op(base, base)
            k >>= 1
        return out

    def order_of(self, x: QuadraticForm) -> int:
        x = self.class_of(x)
        acc, n = x, 1
        while acc != self.identity:
            acc = self.op(acc, x)
            n += 1
            assert n <= max(self.order, 1) + 1
        return n

    def subgroup_generated(self, x: QuadraticForm) -> frozenset[QuadraticForm]:
        x = self.class_of(x)
        out = {self.identity}
        acc = x
        while acc not in out:
            out.add(acc)
            acc = self.op(acc, x)
        return frozenset(out)

    def three_rank(self) -> int:
        count = sum(1 for x in self.elements if self.power(x, 3) == self.identity)
        r = 0
        while count > 1:
            assert count % 3 == 0
            count //= 3
            r += 1
        return r

    def invariant_factors(self) -> tuple[int, ...]:
        """Cyclic decomposition d_1 | d_2 | ... with product = group order."""
        from .arith import factorint

        h = self.order
        if h == 1:
            return ()
        exps_by_prime: dict[int, list[int]] = {}
        for p, vp in factorint(h).items():
            # lam_i = log_p #{x : x^(p^i) = identity}; the increments
            # m_i = lam_i - lam_{i-1} count cyclic p-factors of exponent >= i
            lams = []
            for i in range(1, vp + 1):
                ker = sum(1 for x in self.elements if self.power(x, p**i) == self.identity)
                lam = 0
                while ker > 1:
                    assert ker % p == 0
                    ker //= p
                    lam += 1
                lams.append(lam)
                if lam == vp:
                    break
            m = [lams[0]] + [lams[i] - lams[i - 1] for i in range(1, len(lams))]
            exps = []
            for i in range(len(m)):
                nxt = m[i + 1] if i + 1 < len(m) else 0
                exps.extend([i + 1] * (m[i] - nxt))
            exps_by_prime[p] = sorted(exps, reverse=True)
        width = max(len(v) for v in exps_by_prime.values())
        factors = []
        for slot in range(width):
            val = 1
            for p, exps in exps_by_prime.items():
                if slot < len(exps):
                    val *= p ** exps[slot]
            factors.append(val)
        factors.sort()
        assert math.prod(factors) == h
        return tuple(factors)


@lru_cache(maxsize=None)
def class_group(d: int) -> ClassGroup:
    return ClassGroup(d)
