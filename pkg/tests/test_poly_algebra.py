import random

import pytest
import sympy

from utils.errors import InvariantViolation, MalformedInputError, PreconditionError
from utils.perm_core import (
    all_permutations,
    coxeter_length,
    fireworks_permutations,
    identity,
    longest_element,
    max_weight_formula,
    parse_permutation,
)
from utils.poly_algebra import (
    SparsePolynomial,
    check_path_independence,
    divided_difference,
    grothendieck,
    grothendieck_pd,
    grothendieck_rec,
    homogenize_support,
    isobaric_divided_difference,
    poly_from_pipe_dreams,
    schubert,
    schubert_pd,
    schubert_rec,
    support,
    top_component,
)


def _poly(n, terms):
    return SparsePolynomial(n, dict(terms))


def _to_sympy(f: SparsePolynomial, xs):
    expr = sympy.Integer(0)
    for exp, coef in f.items():
        term = sympy.Integer(coef)
        for x, e in zip(xs, exp):
            term *= x ** e
        expr += term
    return sympy.expand(expr)


def _random_poly(rng, n, terms=5, max_exp=4):
    out = {}
    for _ in range(terms):
        exp = tuple(rng.randint(0, max_exp) for _ in range(n))
        out[exp] = out.get(exp, 0) + rng.choice([-3, -2, -1, 1, 2, 3])
    return SparsePolynomial(n, out)


# ----- arithmetic -----
def test_zero_coefficients_are_dropped():
    f = _poly(2, {(1, 0): 1, (0, 1): 0})
    assert len(f) == 1
    assert (f - f).is_zero()
    assert SparsePolynomial.zero(3).render() == "0"


def test_add_and_negate():
    f = _poly(2, {(1, 0): 2, (0, 1): 1})
    g = _poly(2, {(1, 0): -2, (0, 0): 5})
    assert (f + g) == _poly(2, {(0, 1): 1, (0, 0): 5})
    assert -(-f) == f


def test_terms_is_a_copy():
    f = _poly(2, {(1, 0): 2, (0, 1): 1})
    t = f.terms
    assert t == dict(f.items())
    t[(5, 5)] = 1
    assert (5, 5) not in f.terms


def test_swap_variables():
    f = _poly(3, {(2, 1, 0): 3, (0, 0, 1): -1})
    assert f.swap_variables(1) == _poly(3, {(1, 2, 0): 3, (0, 0, 1): -1})
    assert f.swap_variables(2) == _poly(3, {(2, 0, 1): 3, (0, 1, 0): -1})
    assert f.swap_variables(1).swap_variables(1) == f


def test_mismatched_variables_rejected():
    with pytest.raises(PreconditionError):
        SparsePolynomial.one(2) + SparsePolynomial.one(3)
    with pytest.raises(PreconditionError):
        SparsePolynomial(2, {(1,): 1})
    with pytest.raises(PreconditionError):
        SparsePolynomial(0)


def test_degree_components():
    f = _poly(3, {(1, 0, 0): 1, (1, 1, 0): -1, (0, 2, 1): 4})
    assert f.degree() == 3
    assert f.min_degree() == 1
    assert top_component(f) == _poly(3, {(0, 2, 1): 4})
    assert f.lowest_component() == _poly(3, {(1, 0, 0): 1})
    assert SparsePolynomial.zero(2).degree() == -1


def test_render_order_and_signs():
    f = _poly(4, {(2, 2, 0, 0): -1, (2, 1, 0, 0): 1, (1, 2, 0, 0): 1})
    assert f.render() == "x1*x2^2 + x1^2*x2 - x1^2*x2^2"
    assert _poly(2, {(0, 0): -3, (1, 0): 2}).render() == "-3 + 2*x1"


def test_dict_form_is_sorted():
    f = _poly(2, {(0, 1): 1, (1, 0): -1})
    assert f.to_dict() == {"n_vars": 2, "terms": [{"exp": [0, 1], "coef": 1},
                                                 {"exp": [1, 0], "coef": -1}]}
    assert SparsePolynomial.from_dict(f.to_dict()) == f
    with pytest.raises(MalformedInputError):
        SparsePolynomial.from_dict({"n_vars": 0, "terms": []})


# ----- operators -----
def test_divided_difference_small_values():
    assert divided_difference(_poly(2, {(1, 0): 1}), 1) == SparsePolynomial.one(2)
    assert divided_difference(_poly(2, {(2, 1): 1}), 1) == _poly(2, {(1, 1): 1})
    assert divided_difference(_poly(2, {(1, 1): 1}), 1).is_zero()
    assert isobaric_divided_difference(_poly(2, {(1, 0): 1}), 1) == SparsePolynomial.one(2)
    assert isobaric_divided_difference(_poly(3, {(1, 1, 0): 1}), 2) == _poly(3, {(1, 0, 0): 1})


def test_operator_index_checked():
    f = SparsePolynomial.one(3)
    with pytest.raises(PreconditionError):
        divided_difference(f, 0)
    with pytest.raises(PreconditionError):
        isobaric_divided_difference(f, 3)


def test_divided_difference_against_sympy():
    rng = random.Random(7)
    xs = sympy.symbols("x1:5")
    for _ in range(40):
        f = _random_poly(rng, 4)
        i = rng.randint(1, 3)
        a, b = xs[i - 1], xs[i]
        F = _to_sympy(f, xs)
        swapped = F.subs({a: b, b: a}, simultaneous=True)
        expected = sympy.cancel((F - swapped) / (a - b))
        assert sympy.expand(expected - _to_sympy(divided_difference(f, i), xs)) == 0

        iso = sympy.cancel(((1 - b) * F - ((1 - a) * swapped)) / (a - b))
        assert sympy.expand(iso - _to_sympy(isobaric_divided_difference(f, i), xs)) == 0


def test_divided_difference_times_root_is_antisymmetrization():
    # (x_i - x_{i+1})·∂_i f = f - s_i f
    rng = random.Random(13)
    xs = sympy.symbols("x1:5")
    for _ in range(30):
        f = _random_poly(rng, 4)
        i = rng.randint(1, 3)
        lhs = sympy.expand((xs[i - 1] - xs[i]) * _to_sympy(divided_difference(f, i), xs))
        assert sympy.expand(lhs - _to_sympy(f - f.swap_variables(i), xs)) == 0


def test_operator_relations():
    rng = random.Random(11)
    for _ in range(20):
        f = _random_poly(rng, 3)
        for i in (1, 2):
            assert divided_difference(divided_difference(f, i), i).is_zero()
            once = isobaric_divided_difference(f, i)
            assert isobaric_divided_difference(once, i) == once


# ----- Schubert / Grothendieck -----
def test_2413_values():
    w = parse_permutation("2413")
    assert grothendieck(w).render() == "x1*x2^2 + x1^2*x2 - x1^2*x2^2"
    assert schubert(w).render() == "x1*x2^2 + x1^2*x2"


def test_trivial_cases():
    assert grothendieck(identity(4)) == SparsePolynomial.one(4)
    assert grothendieck(longest_element(4)) == _poly(4, {(3, 2, 1, 0): 1})
    assert grothendieck(parse_permutation("21")) == _poly(2, {(1, 0): 1})


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_pipe_dreams_match_recursion(n):
    for w in all_permutations(n):
        assert grothendieck_pd(w) == grothendieck_rec(w)
        assert schubert_pd(w) == schubert_rec(w)


def test_empty_enumeration_is_an_invariant_violation(monkeypatch):
    monkeypatch.setattr("utils.poly_algebra.enumerate_pipe_dreams", lambda w: iter(()))
    with pytest.raises(InvariantViolation, match="empty"):
        poly_from_pipe_dreams(parse_permutation("2413"), reduced_only=False)


def test_engines_agree_through_front_end():
    w = parse_permutation("31542")
    assert grothendieck(w, engine="recursion") == grothendieck(w, engine="pipedream")
    with pytest.raises(PreconditionError):
        schubert(w, engine="abacus")


def test_path_independence_random_s6():
    rng = random.Random(0)
    perms = list(all_permutations(6))
    for w in rng.sample(perms, 50):
        f = check_path_independence(w, rng)
        assert f == grothendieck_rec(w, "last")


def test_lowest_component_is_schubert():
    for w in all_permutations(4):
        assert grothendieck_pd(w).lowest_component() == schubert_pd(w)


def test_schubert_has_nonnegative_coefficients():
    for w in all_permutations(5):
        assert all(c > 0 for _, c in schubert_pd(w).items())


def test_grothendieck_signs_alternate_by_degree():
    for w in all_permutations(5):
        ell = coxeter_length(w)
        for exp, coef in grothendieck_pd(w).items():
            assert (coef > 0) == ((sum(exp) - ell) % 2 == 0)


@pytest.mark.slow
def test_fireworks_top_component_is_a_monomial():
    for w in fireworks_permutations(6):
        top = top_component(grothendieck_pd(w))
        assert len(top) == 1
        [(exp, coef)] = top.items()
        assert exp == max_weight_formula(w)
        assert coef != 0


# ----- support helpers -----
def test_support_and_homogenize():
    f = grothendieck(parse_permutation("2413"))
    S = support(f)
    assert S.dim == 4
    assert set(S) == {(1, 2, 0, 0), (2, 1, 0, 0), (2, 2, 0, 0)}
    H = homogenize_support(S, 4)
    assert set(H) == {(1, 2, 0, 0, 1), (2, 1, 0, 0, 1), (2, 2, 0, 0, 0)}
    with pytest.raises(PreconditionError):
        homogenize_support(S, 3)
