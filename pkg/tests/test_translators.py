import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from frobtrans.errors import (
    BadL,
    CodomainMismatch,
    ConditionNotSatisfied,
    InternalInconsistency,
    MismatchedFrobeniusIndex,
    NNotFourK,
    NotATranslator,
    OddCharacteristic,
    OddN,
    ScalarOutsideSubfield,
    ZeroGamma,
)
from frobtrans.field import Field
from frobtrans.translators import (
    FunctionTable,
    TranslatorWitness,
    abmod_exponent,
    abmod_solutions,
    check_translator,
    derivative,
    family_binomial,
    family_double_trace,
    family_trace_power,
    find_translators,
    monomial,
    quad_trace_condition,
    quad_trace_function,
    quad_trace_odd_prediction,
    quad_trace_witness,
    subfield_monomial_exponents,
    translator_scale,
    translator_sum,
)

from oracles import brute_translators

F256 = Field(2, 8)
F64 = Field(2, 6)
F16 = Field(2, 4)
F81 = Field(3, 4)
F9 = Field(3, 2)


def trace_table(F, k):
    return FunctionTable(F, k, F.trace(F.elements(), k))


# --- FunctionTable ----------------------------------------------------------------

def test_function_table_validation():
    with pytest.raises(ValueError):
        FunctionTable(F16, 2, np.zeros(5, dtype=int))
    with pytest.raises(CodomainMismatch):
        FunctionTable(F16, 2, F16.elements())
    g = FunctionTable(F16, 2, F16.subfield(2).elements, 2)
    assert g(F16.subfield(2).elements[1]) == F16.subfield(2).elements[1]
    with pytest.raises(CodomainMismatch):
        g(np.array([2]))  # X is not in GF(4)


# --- check_translator ---------------------------------------------------------------

def test_trace_every_gamma_is_linear_translator():
    f = trace_table(F256, 2)
    for g in F256.nonzero()[::17]:
        assert check_translator(f, TranslatorWitness(int(g), 0, F256.trace(int(g), 2)))


def test_trace_power_example():
    f, gammas, witness = family_trace_power(F256, 2, 1)
    for g in gammas:
        w = TranslatorWitness(int(g), 1, F256.trace(F256.pow(int(g), 5), 2))
        assert w == witness(int(g)) and check_translator(f, w)
    bad = next(g for g in F256.nonzero() if F256.frobenius_pow(int(g), 4) != g)
    sub = F256.subfield(2).elements
    assert not any(check_translator(f, TranslatorWitness(int(bad), i, int(b)))
                   for i in range(2) for b in sub)


def test_check_translator_errors():
    f = trace_table(F16, 2)
    with pytest.raises(ZeroGamma):
        check_translator(f, TranslatorWitness(0, 0, 0))
    with pytest.raises(CodomainMismatch):
        check_translator(f, TranslatorWitness(1, 0, 2))


def test_derivative_definition():
    f = monomial(F16, 5, 2)
    xs = F16.elements()
    d = derivative(f, 3, 1)
    assert np.array_equal(d, F16.sub(F16.pow(F16.add(xs, 3), 5), F16.pow(xs, 5)))


# --- find_translators: completeness against the triple loop ---------------------------

def _corpus():
    rng = np.random.default_rng(7)
    out = [trace_table(F16, 2), family_binomial(F16, 1)[0], monomial(F16, 5, 2),
           quad_trace_function(F16, 1, 0, 1, 2), family_double_trace(F16, 1)[0],
           trace_table(F9, 1), monomial(F9, 4, 1), family_binomial(F9, 0)[0]]
    sub = F16.subfield(2).elements
    out.append(FunctionTable(F16, 2, sub[rng.integers(0, 4, 16)]))
    lin = F16.add(F16.trace(F16.elements(), 2), F16.trace(F16.mul(3, F16.elements()), 2))
    out.append(FunctionTable(F16, 2, lin))
    return out


@pytest.mark.parametrize("idx", range(10))
def test_find_translators_matches_brute_force(idx):
    f = _corpus()[idx]
    got = {(w.gamma, w.i, w.b) for w in find_translators(f)}
    assert got == set(brute_translators(f.field, f.values, f.codomain_k))


def test_find_translators_sorted_and_sound():
    f = family_double_trace(F16, 1)[0]
    ws = find_translators(f)
    keys = [(F16.discrete_log(w.gamma), w.i) for w in ws]
    assert keys == sorted(keys)
    assert all(check_translator(f, w) for w in ws)


def test_find_translators_trace_contains_linear():
    f = trace_table(F64, 2)
    ws = {(w.gamma, w.i, w.b) for w in find_translators(f)}
    for g in F64.nonzero().tolist():
        assert (g, 0, F64.trace(g, 2)) in ws


def test_find_translators_binomial_gf64():
    F = F64
    f, _ = family_binomial(F, 1)
    ws = find_translators(f)
    with_i1 = {w.gamma: w.b for w in ws if w.i == 1}
    assert len(with_i1) == 63
    for g, b in with_i1.items():
        assert b == F.add(F.pow(g, 2), F.pow(g, 16))


def test_monomials_into_subfields_have_no_translators():
    for F, k in ((F64, 2), (F81, 2)):
        for d in subfield_monomial_exponents(F, k):
            if d == 0:
                continue  # constant map: every derivative vanishes
            assert find_translators(monomial(F, d, k)) == []


def test_subfield_monomial_exponents_gf64():
    # x^d lands in GF(4) iff 21 divides d (mod 63), plus d = 63
    assert subfield_monomial_exponents(F64, 2) == [0, 21, 42, 63]


# --- sums and scaling ---------------------------------------------------------------------

def test_translator_sum_examples():
    F = F64
    f, wit = family_binomial(F, 1)
    a = F.alpha
    w1, w2 = wit(a), wit(F.pow(a, 2))
    s = translator_sum(w1, w2, f)
    assert s == TranslatorWitness(F.add(a, F.pow(a, 2)), 1, F.add(w1.b, w2.b))
    assert check_translator(f, s)
    with pytest.raises(ZeroGamma):
        translator_sum(w1, w1, f)


def test_translator_sum_errors():
    f = family_double_trace(F16, 1)[0]
    with pytest.raises(MismatchedFrobeniusIndex):
        translator_sum(TranslatorWitness(1, 0, 0), TranslatorWitness(2, 1, 0), f)
    with pytest.raises(NotATranslator):
        translator_sum(TranslatorWitness(1, 0, 1), TranslatorWitness(2, 0, 1), f)


def test_three_way_sum_char2():
    F = F256
    f, wit = family_binomial(F, 2)
    gammas = [F.exp_of(e) for e in (1, 3, 16)]
    ws = [wit(g) for g in gammas]
    assert len({w.b for w in ws}) == 1
    total = translator_sum(translator_sum(ws[0], ws[1], f), ws[2], f)
    assert total.b == ws[0].b and total.i == ws[0].i


def test_translator_scale():
    F = F64
    f, wit = family_binomial(F, 1)
    w = wit(F.alpha)
    assert translator_scale(w, 1, f) == w
    c = F.subfield(3).generator()
    s = translator_scale(w, c, f)
    assert s.b == F.mul(F.pow(c, 2), w.b) and check_translator(f, s)
    with pytest.raises(ScalarOutsideSubfield):
        translator_scale(w, F.alpha, f)
    with pytest.raises(ScalarOutsideSubfield):
        translator_scale(w, 0, f)


def test_scale_trace_consistent():
    F = F64
    f = trace_table(F, 2)
    for c in F.subfield(2).nonzero().tolist():
        s = translator_scale(TranslatorWitness(5, 0, F.trace(5, 2)), c, f)
        assert s.b == F.trace(F.mul(c, 5), 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 255), st.integers(1, 255), st.integers(0, 3))
def test_sum_closure_binomial(g1, g2, i):
    f, wit = family_binomial(F256, i)
    if F256.add(g1, g2) == 0:
        return
    assert check_translator(f, translator_sum(wit(g1), wit(g2), f))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 255), st.integers(1, 15))
def test_scale_closure_binomial(g, ci):
    F = F256
    f, wit = family_binomial(F, 2)
    c = int(F.subfield(4).elements[ci])
    assert check_translator(f, translator_scale(wit(g), c, f))


# --- families ---------------------------------------------------------------------------------

def test_family_trace_power_gf256():
    f, gammas, witness = family_trace_power(F256, 2, 1)
    assert len(gammas) == 15
    assert set(gammas.tolist()) == set(F256.subfield(4).nonzero().tolist())
    assert witness(1).b == 0
    found = {w.gamma for w in find_translators(f)}
    assert found == set(gammas.tolist())


def test_family_trace_power_errors():
    with pytest.raises(OddCharacteristic):
        family_trace_power(F81, 2, 1)
    with pytest.raises(BadL):
        family_trace_power(F256, 2, 4)
    with pytest.raises(BadL):
        family_trace_power(F256, 2, 0)


def test_family_binomial():
    f, wit = family_binomial(F256, 2)
    assert f.codomain_k == 4 and f.image_size() == 16
    for g in F256.subfield(4).nonzero().tolist():
        assert wit(g).b == 0
    f3, wit3 = family_binomial(F81, 0)
    assert f3.image_size() == 9
    for g in F81.nonzero().tolist():
        w = wit3(g)
        assert w.b == F81.add(g, F81.pow(g, 9)) and check_translator(f3, w)
    with pytest.raises(OddN):
        family_binomial(Field(2, 5), 1)


def test_family_double_trace():
    f, report = family_double_trace(F16, 1)
    assert len(report) == 15
    for w in report:
        assert w.i == 1 and w.b == F16.add(F16.pow(w.gamma, 2), F16.pow(w.gamma, 8))
        assert check_translator(f, w)
    f3, report3 = family_double_trace(F81, 1)
    zeros = [g for g in F81.nonzero().tolist() if F81.add(g, F81.pow(g, 9)) == 0]
    assert sorted(w.gamma for w in report3) == sorted(zeros)
    assert all(check_translator(f3, w) for w in report3)
    found = {w.gamma for w in find_translators(f3)}
    assert found == set(zeros)
    with pytest.raises(NNotFourK):
        family_double_trace(F64, 1)


# --- the quadratic trace family --------------------------------------------------------------------

def test_abmod_example_b195():
    assert abmod_exponent(F256, 3, 2, 1, 2) == 195
    assert quad_trace_condition(F256, F256.exp_of(195), F256.exp_of(3), 2, 1, 2)


def test_abmod_a0_char2():
    assert abmod_exponent(F256, 0, 2, 1, 2) == 0
    assert quad_trace_condition(F256, 1, 1, 2, 1, 2)


@pytest.mark.parametrize("a", [1, 2, 5, 7, 11, 40, 79])
@pytest.mark.parametrize("i", [0, 1])
def test_abmod_odd_matches_scan(a, i):
    F = F81
    scan = [b for b in range(F.q - 1)
            if quad_trace_condition(F, F.exp_of(b), F.exp_of(a), i, 1, 2)]
    assert abmod_solutions(F, a, i, 1, 2) == scan
    if scan:
        assert abmod_exponent(F, a, i, 1, 2) == scan[0]


@pytest.mark.parametrize("a", range(1, 60, 7))
def test_abmod_char2_all_l(a):
    F = F256
    for l in (1, 2, 3):
        b = abmod_exponent(F, a, 1, l, 2)
        assert quad_trace_condition(F, F.exp_of(b), F.exp_of(a), 1, l, 2)


def test_quad_trace_condition_bad_l():
    with pytest.raises(BadL):
        quad_trace_condition(F256, 1, 1, 0, 4, 2)


def test_quad_trace_condition_false_means_x_dependence():
    F = F256
    rng = np.random.default_rng(3)
    falses = 0
    for _ in range(30):
        beta, gamma = (int(v) for v in rng.integers(1, 256, 2))
        if quad_trace_condition(F, beta, gamma, 2, 1, 2):
            continue
        falses += 1
        f = quad_trace_function(F, beta, 2, 1, 2)
        assert any(len(np.unique(derivative(f, gamma, int(u)))) > 1
                   for u in F.subfield(2).nonzero())
    assert falses >= 25


def test_quad_trace_witness_b195():
    F = F256
    w = quad_trace_witness(F, F.exp_of(195), F.exp_of(3), 2, 1, 2)
    assert w == TranslatorWitness(F.exp_of(3), 1, 0)


def test_quad_trace_witness_gamma_one():
    F = F256  # r = 4 even: gamma = 1 is a 0-translator
    for beta in F.subfield(2).nonzero().tolist():
        assert quad_trace_witness(F, beta, 1, 2, 1, 2) == TranslatorWitness(1, 1, 0)
    G = F64  # r = 3 odd: (i+1, beta)
    for beta in G.subfield(2).nonzero().tolist():
        assert quad_trace_witness(G, beta, 1, 0, 1, 2) == TranslatorWitness(1, 1, beta)


def test_quad_trace_witness_condition():
    with pytest.raises(ConditionNotSatisfied):
        quad_trace_witness(F256, 1, 2, 2, 1, 2)


def test_quad_trace_witnesses_are_all_found():
    F = F256
    beta = F.exp_of(195)
    f = quad_trace_function(F, beta, 2, 1, 2)
    found = {w.gamma: w for w in find_translators(f)}
    for g in F.nonzero().tolist():
        if quad_trace_condition(F, beta, g, 2, 1, 2):
            assert found[g] == quad_trace_witness(F, beta, g, 2, 1, 2)


@pytest.mark.parametrize("p,n,k", [(3, 2, 1), (3, 4, 1), (3, 4, 2), (5, 2, 1), (3, 6, 3)])
def test_odd_quadratic_prediction(p, n, k):
    F = Field(p, n)
    for l in range(1, n // k):
        for i in range(k):
            predicted = set(quad_trace_odd_prediction(F, i, l, k).tolist())
            for beta in F.subfield(k).nonzero()[:2].tolist():
                ws = find_translators(quad_trace_function(F, beta, i, l, k))
                assert {w.gamma for w in ws} == predicted
                assert all(w.b == 0 for w in ws)


def test_odd_witness_b_zero():
    F = F81
    beta = 1
    for g in quad_trace_odd_prediction(F, 0, 1, 1).tolist():
        if quad_trace_condition(F, beta, g, 0, 1, 1):
            assert quad_trace_witness(F, beta, g, 0, 1, 1) == TranslatorWitness(g, 0, 0)


def test_internal_inconsistency_is_assertion():
    assert issubclass(InternalInconsistency, AssertionError)
