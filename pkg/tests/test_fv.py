"""Tests for formula parsing and generalized-product evaluation."""

import random

import pytest

from adelic.exactpoly import parse_int_poly
from adelic.finring import LocalQuotientRing, PermutedRing, ZmodRing
from adelic.fv import (
    ArityMismatchError,
    EvalCapError,
    FiniteFamily,
    FormulaSyntaxError,
    GeneralizedSentence,
    boole_arity,
    eval_boole,
    eval_ring_formula,
    family_from_json,
    formula_to_text,
    gen_product_eval,
    parse_boole_formula,
    parse_ring_formula,
    preservation_check,
    ring_arity,
    ring_free_vars,
    theta_set,
)
from adelic.fv.formulas import And, Exists

P = parse_int_poly


# ---------------------------------------------------------------------------
# Parsing.


def test_parse_ring_formula_examples():
    t = parse_ring_formula("w0 + w0 = 0")
    assert ring_free_vars(t) == frozenset({0})
    assert ring_arity(t) == 1
    t2 = parse_ring_formula("exists y (y*y = w0)")
    assert ring_free_vars(t2) == frozenset({0})
    assert isinstance(t2, Exists)


def test_parse_boole_formula_example():
    b = parse_boole_formula("Fin(v0) and v0 = v1")
    assert isinstance(b, And)
    assert boole_arity(b) == 2


def test_parse_errors_carry_position():
    with pytest.raises(FormulaSyntaxError) as exc:
        parse_ring_formula("w0 + = 0")
    assert exc.value.line == 1 and exc.value.column >= 6
    with pytest.raises(FormulaSyntaxError):
        parse_ring_formula("w0 = 2")  # only constants 0 and 1 exist
    with pytest.raises(FormulaSyntaxError):
        parse_boole_formula("x0 = v1")
    with pytest.raises(FormulaSyntaxError):
        parse_ring_formula("exists v0 (v0 = 0)")  # wrong variable kind
    with pytest.raises(ValueError):
        parse_ring_formula("y = 0")  # unbound quantified variable


def test_quantifier_scope_is_maximal():
    t = parse_ring_formula("exists y y = 0 and y = w0")
    assert isinstance(t, Exists)
    assert isinstance(t.body, And)


def test_round_trip_identity_fixed():
    ring_cases = [
        "w0 + w0 = 0",
        "exists y (y*y = w0)",
        "not (w0 = 1) -> w1*w0 = w1 - w0",
        "forall y (exists z (y*z = w0 or z = 0))",
        "(w0 + w1) * w2 = w1",
    ]
    for text in ring_cases:
        tree = parse_ring_formula(text)
        assert parse_ring_formula(formula_to_text(tree)) == tree
    boole_cases = [
        "Fin(v0) and v0 = v1",
        "exists v1 (v1 sub v0 and not (v1 = v0))",
        "v0 = 1 -> (v1 = 0 or v0 sub v1)",
    ]
    for text in boole_cases:
        tree = parse_boole_formula(text)
        assert parse_boole_formula(formula_to_text(tree)) == tree


def random_ring_formula(rng, max_free, depth=2, bound_vars=()):
    roll = rng.random()
    if depth == 0 or roll < 0.35:
        def term(d=2):
            r = rng.random()
            if d == 0 or r < 0.4:
                pool = [f"w{rng.randrange(max_free)}"] if max_free else []
                pool += list(bound_vars) + ["0", "1"]
                return rng.choice(pool)
            op = rng.choice(["+", "-", "*"])
            return f"({term(d - 1)} {op} {term(d - 1)})"

        return f"{term()} = {term()}"
    if roll < 0.5:
        return f"not ({random_ring_formula(rng, max_free, depth - 1, bound_vars)})"
    if roll < 0.75:
        op = rng.choice(["and", "or", "->"])
        return (
            f"({random_ring_formula(rng, max_free, depth - 1, bound_vars)}) {op} "
            f"({random_ring_formula(rng, max_free, depth - 1, bound_vars)})"
        )
    name = rng.choice(["y", "z", "y1", "z2"])
    q = rng.choice(["exists", "forall"])
    return f"{q} {name} ({random_ring_formula(rng, max_free, depth - 1, bound_vars + (name,))})"


def test_round_trip_identity_random():
    rng = random.Random(424242)
    for _ in range(200):
        text = random_ring_formula(rng, max_free=2)
        tree = parse_ring_formula(text)
        assert parse_ring_formula(formula_to_text(tree)) == tree


# ---------------------------------------------------------------------------
# Ring-formula evaluation.


def test_eval_ring_formula_examples():
    assert eval_ring_formula(parse_ring_formula("w0 + w0 = 0"), ZmodRing(2), {0: 1})
    assert not eval_ring_formula(parse_ring_formula("w0 + w0 = 0"), ZmodRing(5), {0: 2})
    squares_mod_7 = {(x * x) % 7 for x in range(7)}
    theta = parse_ring_formula("exists y (y*y = w0)")
    for a in range(7):
        assert eval_ring_formula(theta, ZmodRing(7), {0: a}) == (a in squares_mod_7)


def test_eval_ring_formula_unbound_variable():
    with pytest.raises(ArityMismatchError):
        eval_ring_formula(parse_ring_formula("w1 = 0"), ZmodRing(3), {0: 1})


def test_eval_ring_formula_caps():
    deep = parse_ring_formula(
        "exists y (forall z (exists y1 (forall z1 (exists y2 (y + z + y1 + z1 + y2 = 0)))))"
    )
    with pytest.raises(EvalCapError):
        eval_ring_formula(deep, ZmodRing(2), {})


# ---------------------------------------------------------------------------
# theta sets.


def zmod_family():
    return FiniteFamily(("a", "b", "c"), {"a": ZmodRing(2), "b": ZmodRing(3), "c": ZmodRing(5)})


def test_theta_set_examples():
    fam = zmod_family()
    ones = {"a": 1, "b": 1, "c": 1}
    assert theta_set(parse_ring_formula("w0 + w0 = 0"), fam, (ones,)) == frozenset({"a"})
    zeros = {"a": 0, "b": 0, "c": 0}
    assert theta_set(parse_ring_formula("w0 = 0"), fam, (zeros,)) == frozenset({"a", "b", "c"})
    f = {"a": 1, "b": 2, "c": 4}
    assert theta_set(parse_ring_formula("exists y (y*y = w0)"), fam, (f,)) == frozenset({"a", "c"})


def test_theta_set_rejects_foreign_elements():
    fam = zmod_family()
    with pytest.raises(ValueError):
        theta_set(parse_ring_formula("w0 = 0"), fam, ({"a": 9, "b": 0, "c": 0},))


def test_theta_set_boolean_homomorphism_random():
    """[[not theta]] = complement and [[theta1 and theta2]] = intersection."""
    rng = random.Random(9001)
    fam = zmod_family()
    universe = frozenset(fam.index_set)
    for _ in range(100):
        t1 = parse_ring_formula(random_ring_formula(rng, max_free=2))
        t2 = parse_ring_formula(random_ring_formula(rng, max_free=2))
        f0 = {i: rng.randrange(fam.stalks[i].order) for i in fam.index_set}
        f1 = {i: rng.randrange(fam.stalks[i].order) for i in fam.index_set}
        els = (f0, f1)
        s1 = theta_set(t1, fam, els)
        s2 = theta_set(t2, fam, els)
        neg = parse_ring_formula(f"not ({formula_to_text(t1)})")
        conj = parse_ring_formula(f"({formula_to_text(t1)}) and ({formula_to_text(t2)})")
        disj = parse_ring_formula(f"({formula_to_text(t1)}) or ({formula_to_text(t2)})")
        assert theta_set(neg, fam, els) == universe - s1
        assert theta_set(conj, fam, els) == s1 & s2
        assert theta_set(disj, fam, els) == s1 | s2


# ---------------------------------------------------------------------------
# Boolean-side evaluation.


def test_eval_boole_examples():
    index = ("a", "b", "c")
    assert eval_boole(parse_boole_formula("v0 = 1"), index, {0: frozenset(index)})
    assert eval_boole(parse_boole_formula("Fin(v0)"), index, {0: frozenset()})
    assert eval_boole(parse_boole_formula("Fin(v0)"), index, {0: frozenset(("b",))})
    assert eval_boole(
        parse_boole_formula("exists v1 (v1 sub v0 and not (v1 = v0))"),
        index,
        {0: frozenset(("a",))},
    )
    assert not eval_boole(
        parse_boole_formula("exists v1 (v1 sub v0 and not (v1 = v0))"),
        index,
        {0: frozenset()},
    )


def test_eval_boole_index_cap():
    big = tuple(f"i{k}" for k in range(17))
    with pytest.raises(EvalCapError):
        eval_boole(parse_boole_formula("v0 = 1"), big, {0: frozenset(big)})


def test_eval_boole_quantifiers_range_over_powerset():
    index = ("a", "b")
    psi = parse_boole_formula(
        "exists v1 (exists v2 (not (v1 = v2) and v1 sub v0 and v2 sub v0))"
    )
    # two distinct subsets exist below the full set, but not below the bottom
    assert eval_boole(psi, index, {0: frozenset(index)})
    assert not eval_boole(psi, index, {0: frozenset()})


# ---------------------------------------------------------------------------
# Generalized products.


def test_gen_product_eval_examples():
    fam = zmod_family()
    ones = {"a": 1, "b": 1, "c": 1}
    tautology = parse_ring_formula("w0 = w0")
    g1 = GeneralizedSentence(parse_boole_formula("v0 = 1"), (tautology,))
    assert gen_product_eval(g1, fam, (ones,))
    g2 = GeneralizedSentence(parse_boole_formula("v0 = 0"), (tautology,))
    assert not gen_product_eval(g2, fam, (ones,))
    g3 = GeneralizedSentence(
        parse_boole_formula("not (v0 = 1)"), (parse_ring_formula("w0 + w0 = 0"),)
    )
    assert gen_product_eval(g3, fam, (ones,))


def test_gen_product_arity_mismatch_reported_before_evaluation():
    with pytest.raises(ArityMismatchError):
        GeneralizedSentence(parse_boole_formula("v0 = 1 and v1 = 0"), (parse_ring_formula("w0 = w0"),))
    g = GeneralizedSentence(parse_boole_formula("v0 = 1"), (parse_ring_formula("w1 = 0"),))
    with pytest.raises(ArityMismatchError):
        gen_product_eval(g, zmod_family(), ({"a": 0, "b": 0, "c": 0},))


def test_gen_product_atomic_matches_every_stalk_semantics():
    """psi = (v0 = 1) with an atomic equality theta agrees with satisfaction in
    every stalk simultaneously, i.e. with the direct product."""
    rng = random.Random(555)
    fam = zmod_family()
    psi = parse_boole_formula("v0 = 1")
    for _ in range(100):
        def term(d=2):
            r = rng.random()
            if d == 0 or r < 0.45:
                return rng.choice(["w0", "w1", "0", "1"])
            return f"({term(d-1)} {rng.choice(['+', '-', '*'])} {term(d-1)})"

        theta = parse_ring_formula(f"{term()} = {term()}")
        f0 = {i: rng.randrange(fam.stalks[i].order) for i in fam.index_set}
        f1 = {i: rng.randrange(fam.stalks[i].order) for i in fam.index_set}
        via_product = gen_product_eval(GeneralizedSentence(psi, (theta,)), fam, (f0, f1))
        pointwise = all(
            eval_ring_formula(theta, fam.stalks[i], {0: f0[i], 1: f1[i]})
            for i in fam.index_set
        )
        assert via_product == pointwise


# ---------------------------------------------------------------------------
# Preservation under stalk-wise isomorphism.


def closed_sentences(rng, count):
    out = []
    for _ in range(count):
        theta = parse_ring_formula(random_ring_formula(rng, max_free=0))
        psi = rng.choice(
            ["v0 = 1", "v0 = 0", "not (v0 = 1)", "Fin(v0)", "exists v1 (v1 sub v0)"]
        )
        out.append(GeneralizedSentence(parse_boole_formula(psi), (theta,)))
    return out


def test_preservation_identical_families():
    rng = random.Random(31337)
    fam = zmod_family()
    report = preservation_check(fam, fam, closed_sentences(rng, 20))
    assert report.precondition_ok and report.all_agree


def test_preservation_relabeled_stalks_50_sentences():
    rng = random.Random(60601)
    base = {"a": ZmodRing(4), "b": ZmodRing(3), "c": LocalQuotientRing(2, 1, 2, None, 1)}
    relabeled = {}
    for label, ring in base.items():
        perm = list(range(ring.order))
        rng.shuffle(perm)
        relabeled[label] = PermutedRing(ring, perm)
    f1 = FiniteFamily(("a", "b", "c"), base)
    f2 = FiniteFamily(("a", "b", "c"), relabeled)
    report = preservation_check(f1, f2, closed_sentences(rng, 50))
    assert report.precondition_ok
    assert report.all_agree
    assert len(report.results) == 50


def test_preservation_precondition_failure_reported():
    f1 = FiniteFamily(("a",), {"a": ZmodRing(4)})
    f2 = FiniteFamily(("a",), {"a": LocalQuotientRing(2, 2, 1, P("x^2-2"), 2)})
    report = preservation_check(f1, f2, [])
    assert not report.precondition_ok
    assert report.nonisomorphic_indices == ("a",)


def test_preservation_rejects_open_thetas():
    fam = zmod_family()
    g = GeneralizedSentence(parse_boole_formula("v0 = 1"), (parse_ring_formula("w0 = 0"),))
    with pytest.raises(ArityMismatchError):
        preservation_check(fam, fam, [g])


# ---------------------------------------------------------------------------
# Families from JSON.


def test_family_from_json_kinds():
    fam = family_from_json(
        '{"index": ["a", "b", "c", "d"], "stalks": {'
        '"a": {"kind": "Zmod", "m": 4},'
        '"b": {"kind": "GF", "p": 2, "f": 2},'
        '"c": {"kind": "Unramified", "p": 3, "f": 1, "s": 2},'
        '"d": {"kind": "Eisenstein", "p": 2, "e": 2, "s": 2, "coeffs": [-2, 0, 1]}}}'
    )
    orders = [fam.stalks[i].order for i in fam.index_set]
    assert orders == [4, 4, 9, 4]


def test_family_validation():
    with pytest.raises(ValueError):
        FiniteFamily(("a", "a"), {"a": ZmodRing(2)})
    with pytest.raises(ValueError):
        FiniteFamily(("a",), {"b": ZmodRing(2)})
    with pytest.raises(ValueError):
        family_from_json('{"index": ["a"], "stalks": {"a": {"kind": "Banana"}}}')
    with pytest.raises(ValueError):
        FiniteFamily(tuple(f"i{k}" for k in range(17)), {f"i{k}": ZmodRing(2) for k in range(17)})
