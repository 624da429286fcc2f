"""Tests for exact integer and modular polynomial arithmetic."""

import random
from fractions import Fraction

import pytest

from adelic.exactpoly import (
    CompositeModulusError,
    IntPoly,
    ModPoly,
    NonSquarefreeError,
    PolyParseError,
    cz_factor,
    ddf,
    derive_seed,
    discriminant,
    factor_modp,
    gcd_modp,
    irreducible_modp,
    is_irreducible_modp,
    parse_int_poly,
    resultant,
    squarefree_decomposition,
    sturm_real_roots,
)
from adelic.primes import is_prime, primes_up_to

P = parse_int_poly


# ---------------------------------------------------------------------------
# Independent oracles.


def sylvester_resultant(a: IntPoly, b: IntPoly) -> int:
    """Resultant via the Sylvester matrix determinant (fraction-free Bareiss)."""
    m, n = a.degree, b.degree
    if m < 0 or n < 0:
        raise ValueError("zero polynomial")
    size = m + n
    if size == 0:
        return 1
    rows = []
    ac = list(reversed(a.coeffs))
    bc = list(reversed(b.coeffs))
    for i in range(n):
        rows.append([0] * i + ac + [0] * (n - 1 - i))
    for i in range(m):
        rows.append([0] * i + bc + [0] * (m - 1 - i))
    # Bareiss elimination, exact over the integers.
    mat = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(size - 1):
        if mat[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if mat[i][k] != 0), None)
            if swap is None:
                return 0
            mat[k], mat[swap] = mat[swap], mat[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]) // prev
            mat[i][k] = 0
        prev = mat[k][k]
    return sign * mat[size - 1][size - 1]


def grid_real_root_count(f: IntPoly, sturm_value: int) -> int:
    """Count distinct real roots by sign changes on a grid, refining until the
    count matches the Sturm value or the grid becomes absurdly fine.

    Sign changes never overcount distinct roots of a squarefree polynomial,
    so a refinement that reaches the claimed count confirms it; exceeding it
    refutes it."""
    bound = 1 + max(abs(c) for c in f.coeffs) // abs(f.coeffs[-1])
    step = Fraction(1, 4)
    while step > Fraction(1, 2**22):
        count = 0
        x = Fraction(-bound)
        last_sign = 0
        while x <= bound:
            v = f.evaluate(x)
            s = (v > 0) - (v < 0)
            if s == 0:
                count += 1  # exact rational root on the grid
                last_sign = 0
            elif last_sign != 0 and s != last_sign:
                count += 1
            if s != 0:
                last_sign = s
            x += step
        if count == sturm_value:
            return count
        if count > sturm_value:
            return count
        step /= 2
    return count


def brute_factor_degrees(f: ModPoly) -> dict[int, int]:
    """Irreducible factor degrees of a squarefree monic polynomial by trial
    division over all monic polynomials of low degree."""
    p = f.modulus
    out: dict[int, int] = {}
    work = f
    d = 1
    while work.degree > 0:
        if 2 * d > work.degree:
            out[work.degree] = out.get(work.degree, 0) + 1
            break
        found = False
        for k in range(p**d):
            coeffs = []
            v = k
            for _ in range(d):
                coeffs.append(v % p)
                v //= p
            cand = ModPoly(p, coeffs + [1])
            q, r = divmod(work, cand)
            if r.is_zero and _brute_irreducible(cand):
                out[d] = out.get(d, 0) + 1
                work = q
                found = True
                break
        if not found:
            d += 1
    return out


def _brute_irreducible(f: ModPoly) -> bool:
    p = f.modulus
    for d in range(1, f.degree // 2 + 1):
        for k in range(p**d):
            coeffs = []
            v = k
            for _ in range(d):
                coeffs.append(v % p)
                v //= p
            cand = ModPoly(p, coeffs + [1])
            if divmod(f, cand)[1].is_zero:
                return False
    return True


# ---------------------------------------------------------------------------
# Construction, parsing, arithmetic.


def test_intpoly_normalizes_trailing_zeros():
    assert IntPoly((1, 2, 0, 0)).coeffs == (1, 2)
    assert IntPoly(()).degree == -1
    assert IntPoly((0,)).is_zero


def test_intpoly_rejects_non_integers():
    with pytest.raises(TypeError):
        IntPoly((1.5, 2))
    with pytest.raises(TypeError):
        IntPoly((True,))


def test_parse_basic():
    assert P("x^7 - 7*x + 3").coeffs == (3, -7, 0, 0, 0, 0, 0, 1)
    assert P("-x + 1").coeffs == (1, -1)
    assert P("2*x^2").coeffs == (0, 0, 2)
    assert P("5").coeffs == (5,)
    assert P("x^2-2").coeffs == (-2, 0, 1)


def test_parse_rejects_bad_input():
    with pytest.raises(PolyParseError):
        P("y + 1")
    with pytest.raises(PolyParseError):
        P("x^-2")
    with pytest.raises(PolyParseError):
        P("1.5*x")
    with pytest.raises(PolyParseError):
        P("")
    with pytest.raises(PolyParseError):
        P("x +")


def test_text_round_trip():
    rng = random.Random(20240517)
    for _ in range(100):
        coeffs = [rng.randint(-9, 9) for _ in range(rng.randint(1, 8))]
        f = IntPoly(coeffs)
        assert P(f.to_text()) == f


def test_difference_of_squares():
    assert (P("x+1") * P("x-1")).to_text() == "x^2 - 1"


def test_divmod_monic():
    q, r = P("x^2-2").divmod_monic(P("x"))
    assert q == P("x") and r == P("-2")
    with pytest.raises(ValueError):
        P("x^2").divmod_monic(P("2*x"))


def test_divmod_identity_random():
    rng = random.Random(7)
    for _ in range(200):
        a = IntPoly([rng.randint(-20, 20) for _ in range(rng.randint(0, 8))])
        b = IntPoly([rng.randint(-20, 20) for _ in range(rng.randint(0, 4))] + [1])
        q, r = a.divmod_monic(b)
        assert q * b + r == a
        assert r.degree < b.degree


def test_modpoly_char2_doubling():
    a = ModPoly(2, (0, 1, 1))  # x^2 + x
    assert (a + a).is_zero


def test_modpoly_modulus_mismatch():
    with pytest.raises(ValueError):
        ModPoly(3, (1,)) + ModPoly(5, (1,))


def test_modpoly_nonmonic_division_composite_modulus():
    with pytest.raises(ValueError):
        divmod(ModPoly(4, (1, 0, 1)), ModPoly(4, (1, 2)))
    # prime modulus scales by the inverse of the leading coefficient
    q, r = divmod(ModPoly(5, (-1, 0, 1)), ModPoly(5, (1, 2)))
    assert (q * ModPoly(5, (1, 2)) + r).coeffs == ModPoly(5, (-1, 0, 1)).coeffs


def test_shift():
    f = P("x^3 - x - 1")
    g = f.shift(2)
    assert all(g.evaluate(t) == f.evaluate(t + 2) for t in range(-5, 6))


# ---------------------------------------------------------------------------
# GCD and squarefree decomposition.


def test_gcd_examples():
    assert gcd_modp(ModPoly(5, (-1, 0, 1)), ModPoly(5, (-1, 1))) == ModPoly(5, (-1, 1))
    assert gcd_modp(ModPoly(3, (1, 0, 1)), ModPoly(3, (0, 1))) == ModPoly(3, (1,))
    a = ModPoly(7, (3, 2, 1))
    assert gcd_modp(a, ModPoly(7, ())) == a.monic()


def test_gcd_requires_prime_modulus():
    with pytest.raises(CompositeModulusError):
        gcd_modp(ModPoly(4, (1, 1)), ModPoly(4, (1,)))


def test_gcd_with_derivative_of_random_squarefree():
    rng = random.Random(42)
    for _ in range(60):
        p = rng.choice([3, 5, 7, 11, 13])
        while True:
            coeffs = [rng.randrange(p) for _ in range(rng.randint(1, 5))] + [1]
            f = ModPoly(p, coeffs)
            if gcd_modp(f, f.derivative()).degree == 0:
                break
        # brute-force confirmation: no repeated root in F_p
        roots = [x for x in range(p) if f.evaluate(x) == 0]
        for x in roots:
            q, r = divmod(f, ModPoly(p, (-x, 1)))
            assert r.is_zero
            assert q.evaluate(x) != 0


def test_squarefree_visible_square():
    assert squarefree_decomposition(ModPoly(2, (0, 0, 1))) == [(ModPoly(2, (0, 1)), 2)]


def test_squarefree_constructed():
    f = ModPoly(7, tuple((P("x-1") * P("x-1") * P("x-2")).coeffs))
    parts = squarefree_decomposition(f)
    assert sorted((g.lift().to_text(), m) for g, m in parts) == [
        ("x + 5", 1),
        ("x + 6", 2),
    ]


def test_squarefree_pth_power():
    parts = squarefree_decomposition(ModPoly(3, (0,) * 9 + (1,)))
    assert parts == [(ModPoly(3, (0, 1)), 9)]


def test_squarefree_reexpansion_random():
    rng = random.Random(99)
    for _ in range(500):
        p = rng.choice([2, 3, 5, 7])
        # random product of small factors, including characteristic-p powers
        f = ModPoly(p, (1,))
        for _ in range(rng.randint(1, 3)):
            g = ModPoly(p, [rng.randrange(p) for _ in range(rng.randint(1, 2))] + [1])
            f = f * (g if not g.is_zero else ModPoly(p, (1, 1)))
        if rng.random() < 0.3:
            f = f * f * f if p == 3 else f * f
        if f.degree < 1:
            continue
        product = ModPoly(p, (1,))
        for g, mult in squarefree_decomposition(f):
            for _ in range(mult):
                product = product * g
        assert product == f.monic()
        parts = squarefree_decomposition(f)
        for i, (g1, _) in enumerate(parts):
            assert gcd_modp(g1, g1.derivative()).degree == 0
            for g2, _ in parts[i + 1 :]:
                assert gcd_modp(g1, g2).degree == 0


# ---------------------------------------------------------------------------
# Distinct-degree factorization and equal-degree splitting.


def test_ddf_examples():
    assert ddf(ModPoly(7, (-2, 0, 1))) == {1: 2}  # roots 3 and 4
    assert ddf(ModPoly(3, (-2, 0, 1))) == {2: 1}  # no roots mod 3
    assert ddf(ModPoly(5, (0, -1, 0, 1))) == {1: 3}  # roots 0, 1, 4


def test_ddf_rejects_non_squarefree():
    with pytest.raises(NonSquarefreeError):
        ddf(ModPoly(5, (0, 0, 1)))


def test_ddf_root_exhaustion_oracle():
    # the degree-1 count must match the number of roots in F_p
    rng = random.Random(11)
    for _ in range(100):
        p = rng.choice([3, 5, 7, 11])
        f = ModPoly(p, [rng.randrange(p) for _ in range(rng.randint(1, 5))] + [1])
        if gcd_modp(f, f.derivative()).degree != 0:
            continue
        counts = ddf(f)
        roots = sum(1 for x in range(p) if f.evaluate(x) == 0)
        assert counts.get(1, 0) == roots


def test_cz_examples():
    fs = cz_factor(ModPoly(7, (-2, 0, 1)), seed=1)
    assert [g.lift().to_text() for g in fs] == ["x + 3", "x + 4"]  # x-3 = x+4, x-4 = x+3
    fs = cz_factor(ModPoly(3, (1, 0, 1)), seed=5)
    assert fs == [ModPoly(3, (1, 0, 1))]
    fs = cz_factor(ModPoly(5, (-1, 0, 0, 0, 1)), seed=99)
    assert [g.lift().to_text() for g in fs] == ["x + 1", "x + 2", "x + 3", "x + 4"]


def test_cz_deterministic_and_reexpands():
    rng = random.Random(2718)
    for _ in range(200):
        p = rng.choice([2, 3, 5, 13, 31, 97])
        f = ModPoly(p, [rng.randrange(p) for _ in range(rng.randint(1, 10))] + [1])
        if gcd_modp(f, f.derivative()).degree != 0:
            continue
        seed = derive_seed(p, f.coeffs)
        fs1 = cz_factor(f, seed)
        fs2 = cz_factor(f, seed)
        assert fs1 == fs2
        product = ModPoly(p, (1,))
        for g in fs1:
            assert g.is_monic
            product = product * g
        assert product == f
        assert all(is_irreducible_modp(g) for g in fs1)


def test_cz_against_brute_force_small():
    rng = random.Random(5)
    for _ in range(60):
        p = rng.choice([2, 3, 5])
        f = ModPoly(p, [rng.randrange(p) for _ in range(rng.randint(1, 4))] + [1])
        if gcd_modp(f, f.derivative()).degree != 0:
            continue
        got = {}
        for g in cz_factor(f, seed=derive_seed(p, f.coeffs)):
            got[g.degree] = got.get(g.degree, 0) + 1
        assert got == brute_factor_degrees(f)


def test_factor_modp_multiplicities():
    f = ModPoly(5, tuple((P("x-1") ** 2 * P("x^2+2")).coeffs))
    parts = factor_modp(f)
    assert sorted((g.lift().to_text(), m) for g, m in parts) == [
        ("x + 4", 2),
        ("x^2 + 2", 1),
    ]


# ---------------------------------------------------------------------------
# Resultant, discriminant, Sturm.


def test_discriminant_quadratics():
    assert discriminant(P("x^2-2")) == 8
    assert discriminant(P("x^2-3")) == 12
    # quadratic formula check: disc(x^2 + bx + c) = b^2 - 4c
    rng = random.Random(3)
    for _ in range(50):
        b, c = rng.randint(-30, 30), rng.randint(-30, 30)
        assert discriminant(IntPoly((c, b, 1))) == b * b - 4 * c


def test_discriminant_cubic_against_determinant_oracle():
    assert discriminant(P("x^3-x-1")) == -23
    assert sylvester_resultant(P("x^3-x-1"), P("x^3-x-1").derivative()) == 23


def test_resultant_matches_sylvester_oracle_random():
    rng = random.Random(123)
    for _ in range(150):
        a = IntPoly([rng.randint(-9, 9) for _ in range(rng.randint(1, 6))] + [rng.choice([1, 2, -1])])
        b = IntPoly([rng.randint(-9, 9) for _ in range(rng.randint(1, 6))] + [rng.choice([1, 3, -2])])
        assert resultant(a, b) == sylvester_resultant(a, b)


def test_discriminant_zero_iff_gcd_nonconstant():
    rng = random.Random(321)
    for _ in range(100):
        f = IntPoly([rng.randint(-6, 6) for _ in range(rng.randint(1, 5))] + [1])
        disc = discriminant(f)
        try:
            sturm_real_roots(f)
            gcd_constant = True
        except NonSquarefreeError:
            gcd_constant = False
        assert (disc == 0) == (not gcd_constant)


def test_discriminant_errors():
    with pytest.raises(ValueError):
        discriminant(IntPoly(()))
    with pytest.raises(ValueError):
        discriminant(P("2*x^2 - 1"))


def test_sturm_examples():
    assert sturm_real_roots(P("x^2-2")) == 2
    assert sturm_real_roots(P("x^2+1")) == 0
    assert sturm_real_roots(P("x^3-x-1")) == 1


def test_sturm_rejects_non_squarefree():
    with pytest.raises(NonSquarefreeError):
        sturm_real_roots(P("x^2 - 2*x + 1"))


def test_sturm_against_grid_bisection_oracle():
    rng = random.Random(777)
    done = 0
    while done < 200:
        deg = rng.randint(1, 6)
        f = IntPoly([rng.randint(-9, 9) for _ in range(deg)] + [1])
        if discriminant(f) == 0:
            continue
        count = sturm_real_roots(f)
        assert grid_real_root_count(f, count) == count
        done += 1


# ---------------------------------------------------------------------------
# Deterministic irreducible polynomials.


def test_irreducible_modp_examples():
    assert irreducible_modp(2, 1) == ModPoly(2, (0, 1))
    assert irreducible_modp(3, 2) == ModPoly(3, (1, 0, 1))
    assert irreducible_modp(2, 2) == ModPoly(2, (1, 1, 1))


def test_irreducible_modp_is_deterministic_and_irreducible():
    for p in (2, 3, 5, 7):
        for d in (1, 2, 3, 4):
            f = irreducible_modp(p, d)
            assert f == irreducible_modp(p, d)
            assert f.degree == d and f.is_monic
            assert is_irreducible_modp(f)
            assert _brute_irreducible(f)


def test_is_prime_against_sieve():
    sieve = set(primes_up_to(2000))
    for n in range(2000):
        assert is_prime(n) == (n in sieve)
