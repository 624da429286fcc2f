"""Exact polynomial arithmetic over Z and over Z/m for m a prime or prime power.

Polynomials are coefficient sequences with the constant term first, so the
coefficient at index k belongs to x^k.  Trailing zeros are stripped on
construction and modular coefficients are reduced on construction, which makes
structural equality a valid equality test.  All values are immutable and every
operation is a pure function, so values can be shared freely between threads.

Coefficients are plain Python integers (arbitrary precision); no floating
point is used anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .primes import is_prime

__all__ = [
    "IntPoly",
    "ModPoly",
    "PolyParseError",
    "CompositeModulusError",
    "NonSquarefreeError",
    "parse_int_poly",
    "gcd_modp",
    "squarefree_decomposition",
    "ddf",
    "cz_factor",
    "factor_modp",
    "derive_seed",
    "is_irreducible_modp",
    "irreducible_modp",
    "resultant",
    "discriminant",
    "sturm_real_roots",
]


class PolyParseError(ValueError):
    """Raised on malformed polynomial text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class CompositeModulusError(ValueError):
    """Raised when an operation requiring a prime modulus gets a composite one."""


class NonSquarefreeError(ValueError):
    """Raised when an operation requires a squarefree input polynomial."""


# ---------------------------------------------------------------------------
# Raw coefficient-list helpers.  Lists hold ints, constant term first, with no
# trailing zeros.  These are the working representation inside algorithms;
# IntPoly/ModPoly wrap them at API boundaries.


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _add(a: list[int], b: list[int], m: int | None) -> list[int]:
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] = x
    for i, y in enumerate(b):
        out[i] += y
    if m is not None:
        out = [v % m for v in out]
    return _trim(out)


def _neg(a: list[int], m: int | None) -> list[int]:
    if m is None:
        return [-x for x in a]
    return _trim([(-x) % m for x in a])


def _sub(a: list[int], b: list[int], m: int | None) -> list[int]:
    return _add(a, _neg(b, m), m)


def _mul(a: list[int], b: list[int], m: int | None) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    if m is not None:
        out = [v % m for v in out]
    return _trim(out)


def _divmod_monic(a: list[int], b: list[int], m: int | None) -> tuple[list[int], list[int]]:
    """Quotient and remainder by a monic divisor; exact in any coefficient ring."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if b[-1] != 1:
        raise ValueError("divisor must be monic")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], _trim(r)
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] if m is None else r[i] % m
        if c == 0:
            continue
        q[i - db] = c
        for j in range(db + 1):
            r[i - db + j] -= c * b[j]
            if m is not None:
                r[i - db + j] %= m
    return _trim(q), _trim(r)


def _divmod_modp(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    """Division with remainder over the field Z/p (divisor need not be monic)."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    lc_inv = pow(b[-1], p - 2, p)
    if lc_inv != 1:
        b = _trim([c * lc_inv % p for c in b])
        q, r = _divmod_monic(a, b, p)
        return _trim([c * lc_inv % p for c in q]), r
    return _divmod_monic(a, b, p)


def _monic_modp(a: list[int], p: int) -> list[int]:
    if not a or a[-1] == 1:
        return list(a)
    inv = pow(a[-1], p - 2, p)
    return _trim([c * inv % p for c in a])


def _gcd_modp(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        _, r = _divmod_modp(a, b, p)
        a, b = b, r
    return _monic_modp(a, p)


def _deriv(a: list[int], m: int | None) -> list[int]:
    out = [i * c for i, c in enumerate(a)][1:]
    if m is not None:
        out = [v % m for v in out]
    return _trim(out)


def _powmod(base: list[int], exp: int, mod: list[int], p: int) -> list[int]:
    """base**exp modulo the polynomial mod, coefficients mod the prime p."""
    result = [1]
    base = _divmod_modp(base, mod, p)[1]
    while exp > 0:
        if exp & 1:
            result = _divmod_modp(_mul(result, base, p), mod, p)[1]
        base = _divmod_modp(_mul(base, base, p), mod, p)[1]
        exp >>= 1
    return result


# ---------------------------------------------------------------------------
# Public wrapper types.


@dataclass(frozen=True, slots=True)
class IntPoly:
    """Polynomial with arbitrary-precision integer coefficients.

    coeffs[k] is the coefficient of x^k; the tuple carries no trailing zeros,
    so the leading coefficient is nonzero unless the polynomial is zero.
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        for c in cs:
            if not isinstance(c, int) or isinstance(c, bool):
                raise TypeError(f"integer coefficient expected, got {c!r}")
        _trim(cs)
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "IntPoly":
        return cls(())

    @classmethod
    def one(cls) -> "IntPoly":
        return cls((1,))

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, coeff: int, power: int) -> "IntPoly":
        return cls((0,) * power + (coeff,))

    # -- structure ----------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly(_add(list(self.coeffs), list(other.coeffs), None))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly(_sub(list(self.coeffs), list(other.coeffs), None))

    def __neg__(self) -> "IntPoly":
        return IntPoly(_neg(list(self.coeffs), None))

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly(_mul(list(self.coeffs), list(other.coeffs), None))

    def __pow__(self, n: int) -> "IntPoly":
        if n < 0:
            raise ValueError("negative power")
        result = IntPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod_monic(self, divisor: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        """Quotient-remainder by a monic divisor: self = q*divisor + r, deg r < deg divisor."""
        q, r = _divmod_monic(list(self.coeffs), list(divisor.coeffs), None)
        return IntPoly(q), IntPoly(r)

    def derivative(self) -> "IntPoly":
        return IntPoly(_deriv(list(self.coeffs), None))

    def evaluate(self, x):
        """Horner evaluation; works for int and Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, c: int) -> "IntPoly":
        """The polynomial f(x + c), by repeated synthetic division."""
        out = list(self.coeffs)
        n = len(out)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                out[j] += c * out[j + 1]
        return IntPoly(out)

    def reduce_mod(self, modulus: int) -> "ModPoly":
        return ModPoly(modulus, self.coeffs)

    # -- text ---------------------------------------------------------

    def to_text(self) -> str:
        """Render in the polynomial grammar, highest power first."""
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            elif k == 1:
                body = "x" if mag == 1 else f"{mag}*x"
            else:
                body = f"x^{k}" if mag == 1 else f"{mag}*x^{k}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"IntPoly({self.to_text()!r})"


@dataclass(frozen=True, slots=True)
class ModPoly:
    """Polynomial with coefficients reduced modulo a prime or prime power."""

    modulus: int
    coeffs: tuple[int, ...]

    def __init__(self, modulus: int, coeffs=()):
        if modulus < 2:
            raise ValueError("modulus must be at least 2")
        cs = _trim([int(c) % modulus for c in coeffs])
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def _check(self, other: "ModPoly") -> None:
        if self.modulus != other.modulus:
            raise ValueError(f"modulus mismatch: {self.modulus} vs {other.modulus}")

    def __add__(self, other: "ModPoly") -> "ModPoly":
        self._check(other)
        return ModPoly(self.modulus, _add(list(self.coeffs), list(other.coeffs), self.modulus))

    def __sub__(self, other: "ModPoly") -> "ModPoly":
        self._check(other)
        return ModPoly(self.modulus, _sub(list(self.coeffs), list(other.coeffs), self.modulus))

    def __neg__(self) -> "ModPoly":
        return ModPoly(self.modulus, _neg(list(self.coeffs), self.modulus))

    def __mul__(self, other: "ModPoly") -> "ModPoly":
        self._check(other)
        return ModPoly(self.modulus, _mul(list(self.coeffs), list(other.coeffs), self.modulus))

    def __divmod__(self, other: "ModPoly") -> tuple["ModPoly", "ModPoly"]:
        """Quotient-remainder.  A non-monic divisor is only allowed for prime modulus."""
        self._check(other)
        m = self.modulus
        if other.is_monic:
            q, r = _divmod_monic(list(self.coeffs), list(other.coeffs), m)
        elif is_prime(m):
            q, r = _divmod_modp(list(self.coeffs), list(other.coeffs), m)
        else:
            raise ValueError("division by a non-monic divisor requires a prime modulus")
        return ModPoly(m, q), ModPoly(m, r)

    def __floordiv__(self, other: "ModPoly") -> "ModPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "ModPoly") -> "ModPoly":
        return divmod(self, other)[1]

    def derivative(self) -> "ModPoly":
        return ModPoly(self.modulus, _deriv(list(self.coeffs), self.modulus))

    def evaluate(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.modulus
        return acc

    def monic(self) -> "ModPoly":
        """Monic scalar multiple (prime modulus required unless already monic)."""
        if self.is_zero or self.is_monic:
            return self
        _require_prime(self.modulus)
        return ModPoly(self.modulus, _monic_modp(list(self.coeffs), self.modulus))

    def lift(self) -> IntPoly:
        """Integer lift with coefficients in [0, modulus)."""
        return IntPoly(self.coeffs)

    def to_text(self) -> str:
        return f"{self.lift().to_text()} (mod {self.modulus})"

    def __repr__(self) -> str:
        return f"ModPoly({self.modulus}, {self.lift().to_text()!r})"


def _require_prime(m: int) -> None:
    if not is_prime(m):
        raise CompositeModulusError(f"prime modulus required, got {m}")


# ---------------------------------------------------------------------------
# Parsing of the polynomial text grammar: variable x, integer literals,
# operators + - * ^, e.g. "x^7 - 7*x + 3".


def _tokenize_poly(text: str):
    tokens: list[tuple[str, str, int]] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
        elif ch in "+-*^":
            tokens.append((ch, ch, i))
            i += 1
        elif ch.isalpha():
            if ch != "x":
                raise PolyParseError(f"unknown variable {ch!r}; only x is allowed", i)
            tokens.append(("x", "x", i))
            i += 1
        elif ch == ".":
            raise PolyParseError("non-integer coefficients are not allowed", i)
        else:
            raise PolyParseError(f"unexpected character {ch!r}", i)
    return tokens


def parse_int_poly(text: str) -> IntPoly:
    """Parse polynomial text into an IntPoly.

    Grammar: sums/differences of terms; a term is a product of factors; a
    factor is an integer literal or x with an optional nonnegative ^ power.
    """
    tokens = _tokenize_poly(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take(kind=None):
        nonlocal pos
        tok = peek()
        if tok is None:
            raise PolyParseError("unexpected end of input", len(text))
        if kind is not None and tok[0] != kind:
            raise PolyParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        pos += 1
        return tok

    def parse_factor() -> IntPoly:
        tok = take()
        if tok[0] == "int":
            return IntPoly((int(tok[1]),))
        if tok[0] == "x":
            if peek() is not None and peek()[0] == "^":
                take("^")
                etok = take("int")
                return IntPoly.monomial(1, int(etok[1]))
            return IntPoly.x()
        raise PolyParseError(f"expected a coefficient or x, found {tok[1]!r}", tok[2])

    def parse_term() -> IntPoly:
        acc = parse_factor()
        while peek() is not None and peek()[0] == "*":
            take("*")
            acc = acc * parse_factor()
        return acc

    if not tokens:
        raise PolyParseError("empty polynomial", 0)
    negate = False
    if peek()[0] in ("+", "-"):
        negate = take()[0] == "-"
    result = parse_term()
    if negate:
        result = -result
    while peek() is not None:
        op = take()
        if op[0] not in ("+", "-"):
            raise PolyParseError(f"expected + or -, found {op[1]!r}", op[2])
        term = parse_term()
        result = result + term if op[0] == "+" else result - term
    return result


# ---------------------------------------------------------------------------
# GCD, squarefree decomposition, and factorization over prime fields.


def gcd_modp(a: ModPoly, b: ModPoly) -> ModPoly:
    """Monic greatest common divisor over Z/p; gcd(a, 0) is the monic scaling of a."""
    a._check(b)
    _require_prime(a.modulus)
    return ModPoly(a.modulus, _gcd_modp(list(a.coeffs), list(b.coeffs), a.modulus))


def _pth_root_modp(a: list[int], p: int) -> list[int]:
    # In characteristic p, c**p == c, so the p-th root just picks every p-th coefficient.
    return _trim([a[i] for i in range(0, len(a), p)])


def squarefree_decomposition(a: ModPoly) -> list[tuple[ModPoly, int]]:
    """Squarefree decomposition over Z/p: pairwise-coprime parts with multiplicities.

    The product of part**multiplicity equals the input.  Handles vanishing
    derivatives in characteristic p by extracting p-th roots.
    """
    p = a.modulus
    _require_prime(p)
    if a.is_zero or not a.is_monic:
        raise ValueError("squarefree decomposition requires a monic nonzero polynomial")
    f = list(a.coeffs)
    out: list[tuple[ModPoly, int]] = []
    scale = 1
    while len(f) > 1:
        d = _deriv(f, p)
        if not d:
            f = _pth_root_modp(f, p)
            scale *= p
            continue
        g = _gcd_modp(f, d, p)
        w = _divmod_modp(f, g, p)[0]
        i = 1
        while len(w) > 1:
            y = _gcd_modp(w, g, p)
            z = _divmod_modp(w, y, p)[0]
            if len(z) > 1:
                out.append((ModPoly(p, z), i * scale))
            w = y
            g = _divmod_modp(g, y, p)[0]
            i += 1
        f = g
    out.sort(key=lambda t: (t[1], t[0].coeffs))
    return out


def _squarefree_part(a: ModPoly) -> ModPoly:
    parts = squarefree_decomposition(a.monic())
    acc = ModPoly(a.modulus, (1,))
    for g, _ in parts:
        acc = acc * g
    return acc


def _is_squarefree_modp(a: list[int], p: int) -> bool:
    return len(_gcd_modp(a, _deriv(a, p), p)) == 1


def ddf(a: ModPoly) -> dict[int, int]:
    """Distinct-degree factorization: degree d -> number of irreducible factors of degree d.

    Requires a monic squarefree polynomial over a prime field.
    """
    p = a.modulus
    _require_prime(p)
    if a.is_zero or not a.is_monic:
        raise ValueError("ddf requires a monic nonzero polynomial")
    f = list(a.coeffs)
    if not _is_squarefree_modp(f, p):
        raise NonSquarefreeError("ddf requires a squarefree polynomial")
    counts: dict[int, int] = {}
    v = f
    h = [0, 1]  # x
    d = 0
    while len(v) - 1 > 2 * d:
        d += 1
        h = _powmod(h, p, v, p)
        g = _gcd_modp(_sub(h, [0, 1], p), v, p)
        if len(g) > 1:
            counts[d] = (len(g) - 1) // d
            v = _divmod_modp(v, g, p)[0]
            h = _divmod_modp(h, v, p)[1]
    if len(v) > 1:
        deg = len(v) - 1
        counts[deg] = counts.get(deg, 0) + 1
    return counts


class _Lcg:
    """Small deterministic linear congruential generator (64-bit state).

    Used to derandomize equal-degree splitting; identical seeds give identical
    factor output on every platform and run.
    """

    def __init__(self, seed: int):
        self.state = (seed ^ 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF

    def next(self) -> int:
        self.state = (self.state * 6364136223846793005 + 1442695040888963407) & 0xFFFFFFFFFFFFFFFF
        return self.state >> 16

    def below(self, n: int) -> int:
        return self.next() % n


def derive_seed(p: int, coeffs: tuple[int, ...]) -> int:
    """Fixed seed derived from (p, coefficient sequence); makes factoring reproducible."""
    h = 0xCBF29CE484222325
    for v in (p, len(coeffs), *coeffs):
        v &= 0xFFFFFFFFFFFFFFFF
        while True:
            h = ((h ^ (v & 0xFF)) * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
            v >>= 8
            if v == 0:
                break
    return h


def _edf(f: list[int], d: int, p: int, rng: _Lcg) -> list[list[int]]:
    """Equal-degree splitting: f is monic squarefree, all factors of degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = _trim([rng.below(p) for _ in range(n)])
        if len(a) - 1 < 1:
            continue
        g = _gcd_modp(a, f, p)
        if 1 <= len(g) - 1 < n:
            h = g
        else:
            if p == 2:
                # Trace map a + a^2 + ... + a^(2^(d-1)) splits the factors.
                t = a
                acc = a
                for _ in range(d - 1):
                    acc = _divmod_modp(_mul(acc, acc, p), f, p)[1]
                    t = _add(t, acc, p)
            else:
                b = _powmod(a, (p**d - 1) // 2, f, p)
                t = _sub(b, [1], p)
            h = _gcd_modp(t, f, p)
            if not (1 <= len(h) - 1 < n):
                continue
        rest = _divmod_modp(f, h, p)[0]
        return _edf(h, d, p, rng) + _edf(rest, d, p, rng)


def cz_factor(a: ModPoly, seed: int) -> list[ModPoly]:
    """Complete factorization of a monic squarefree polynomial into monic irreducibles.

    Cantor-Zassenhaus equal-degree splitting on top of the distinct-degree
    stage; deterministic for a given seed, and the factor list is returned in
    the canonical (degree, coefficients) order.
    """
    p = a.modulus
    _require_prime(p)
    if a.is_zero or not a.is_monic:
        raise ValueError("cz_factor requires a monic nonzero polynomial")
    f = list(a.coeffs)
    if not _is_squarefree_modp(f, p):
        raise NonSquarefreeError("cz_factor requires a squarefree polynomial")
    rng = _Lcg(seed)
    factors: list[list[int]] = []
    v = f
    h = [0, 1]
    d = 0
    while len(v) - 1 > 2 * d:
        d += 1
        h = _powmod(h, p, v, p)
        g = _gcd_modp(_sub(h, [0, 1], p), v, p)
        if len(g) > 1:
            factors.extend(_edf(g, d, p, rng))
            v = _divmod_modp(v, g, p)[0]
            h = _divmod_modp(h, v, p)[1]
    if len(v) > 1:
        factors.append(v)
    factors.sort(key=lambda c: (len(c), tuple(c)))
    return [ModPoly(p, c) for c in factors]


def factor_modp(a: ModPoly, seed: int | None = None) -> list[tuple[ModPoly, int]]:
    """Factor a monic polynomial over Z/p into (irreducible, multiplicity) pairs.

    Composition of squarefree decomposition and equal-degree splitting; the
    seed defaults to the fixed function of (p, coefficients).
    """
    if seed is None:
        seed = derive_seed(a.modulus, a.coeffs)
    out: list[tuple[ModPoly, int]] = []
    for part, mult in squarefree_decomposition(a):
        for g in cz_factor(part, seed):
            out.append((g, mult))
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs, t[1]))
    return out


def is_irreducible_modp(a: ModPoly) -> bool:
    """Rabin irreducibility test over Z/p for a monic polynomial."""
    p = a.modulus
    _require_prime(p)
    n = a.degree
    if n < 1:
        return False
    f = list(a.monic().coeffs)
    x_red = _divmod_modp([0, 1], f, p)[1]
    h = _powmod([0, 1], p**n, f, p)
    if _trim(_sub(h, x_red, p)):
        return False
    for ell in {q for q in range(2, n + 1) if n % q == 0 and is_prime(q)}:
        h = _powmod([0, 1], p ** (n // ell), f, p)
        if len(_gcd_modp(_sub(h, x_red, p), f, p)) != 1:
            return False
    return True


def irreducible_modp(p: int, d: int) -> ModPoly:
    """First monic irreducible of degree d over Z/p in base-p coefficient order.

    Deterministic for fixed (p, d): candidates x^d + sum(c_i x^i) are tried
    with (c_0, ..., c_{d-1}) counting upward in base p, c_0 least significant.
    """
    _require_prime(p)
    if d < 1:
        raise ValueError("degree must be at least 1")
    for k in range(p**d):
        coeffs = []
        v = k
        for _ in range(d):
            coeffs.append(v % p)
            v //= p
        cand = ModPoly(p, coeffs + [1])
        if is_irreducible_modp(cand):
            return cand
    raise AssertionError("unreachable: irreducibles of every degree exist")


# ---------------------------------------------------------------------------
# Resultant, discriminant, and Sturm real-root counting (exact over Q).


def _frac_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    r = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    db = len(b) - 1
    while len(r) - 1 >= db and r:
        c = r[-1] / b[-1]
        k = len(r) - 1 - db
        q[k] = c
        for j in range(db + 1):
            r[k + j] -= c * b[j]
        while r and r[-1] == 0:
            r.pop()
    return q, r


def resultant(a: IntPoly, b: IntPoly) -> int:
    """Resultant of two integer polynomials, exact (Euclidean recursion over Q)."""
    if a.is_zero or b.is_zero:
        raise ValueError("resultant of the zero polynomial is undefined")
    fa = [Fraction(c) for c in a.coeffs]
    fb = [Fraction(c) for c in b.coeffs]
    acc = Fraction(1)
    while True:
        da, db = len(fa) - 1, len(fb) - 1
        if db == 0:
            acc *= fb[0] ** da
            break
        _, r = _frac_divmod(fa, fb)
        if not r:
            return 0
        dr = len(r) - 1
        if (da * db) % 2 == 1:
            acc = -acc
        acc *= fb[-1] ** (da - dr)
        fa, fb = fb, r
    assert acc.denominator == 1
    return int(acc)


def discriminant(f: IntPoly) -> int:
    """Discriminant of a monic integer polynomial: (-1)^(n(n-1)/2) * res(f, f')."""
    if f.is_zero:
        raise ValueError("discriminant of the zero polynomial is undefined")
    if not f.is_monic or f.degree < 1:
        raise ValueError("discriminant requires a monic polynomial of degree >= 1")
    n = f.degree
    if n == 1:
        return 1
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative())


def _sign_variations(signs: list[int]) -> int:
    filtered = [s for s in signs if s != 0]
    return sum(1 for s1, s2 in zip(filtered, filtered[1:]) if s1 * s2 < 0)


def sturm_real_roots(f: IntPoly) -> int:
    """Number of distinct real roots of a squarefree integer polynomial.

    Sign-variation difference of the Sturm sequence at -infinity and
    +infinity, computed in exact rational arithmetic.
    """
    if f.is_zero:
        raise ValueError("zero polynomial")
    if f.degree == 0:
        return 0
    chain: list[list[Fraction]] = [[Fraction(c) for c in f.coeffs]]
    chain.append([Fraction(c) for c in f.derivative().coeffs])
    g = _frac_gcd(chain[0], chain[1])
    if len(g) > 1:
        raise NonSquarefreeError("Sturm counting requires a squarefree polynomial")
    while len(chain[-1]) > 1:
        _, r = _frac_divmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    at_minus = []
    at_plus = []
    for poly in chain:
        if not poly:
            continue
        lead = poly[-1]
        deg = len(poly) - 1
        s = 1 if lead > 0 else -1
        at_plus.append(s)
        at_minus.append(s if deg % 2 == 0 else -s)
    return _sign_variations(at_minus) - _sign_variations(at_plus)


def _frac_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    while b:
        _, r = _frac_divmod(a, b)
        a, b = b, r
    return a
