"""The ten acceptance criteria, each with its exactness and time budget."""

import itertools
import time

import numpy as np
import pytest

import frobtrans.bent as bt
from frobtrans.field import Field
from frobtrans.perms import (
    LinearizedMap,
    build_perm_frobenius,
    family_perSp,
    family_perSpdelta,
    linmap_is_permutation,
    make_h_from_g,
    subspace_S,
    verify_th_var2,
)
from frobtrans.repro import equal_a_triples, shift_quadruple
from frobtrans.translators import (
    FunctionTable,
    abmod_exponent,
    check_translator,
    family_binomial,
    family_trace_power,
    find_translators,
    quad_trace_function,
    quad_trace_witness,
    subfield_monomial_exponents,
    monomial,
)

from oracles import is_perm_by_set


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.seconds, f"took {self.elapsed:.2f}s, budget {self.seconds}s"


def test_criterion_01_quadratic_trace_example():
    with Budget(1):
        F = Field(2, 8)
        b = abmod_exponent(F, 3, 2, 1, 2)
        assert b == 195
        beta, gamma = F.exp_of(195), F.exp_of(3)
        w = quad_trace_witness(F, beta, gamma, 2, 1, 2)
        assert (w.gamma, w.i, w.b) == (gamma, 3 % 2, 0)
        f = quad_trace_function(F, beta, 2, 1, 2)
        xs = F.elements()
        sub = F.subfield(2).elements
        assert len(xs) * len(sub) == 256 * 4
        assert check_translator(f, w)
        for u in sub.tolist():
            lhs = F.sub(f(F.add(xs, F.mul(u, gamma))), f.values)
            assert np.all(lhs == F.mul(F.frobenius_pow(u, w.i), w.b))


def test_criterion_02_trace_power_family():
    with Budget(5):
        F = Field(2, 8)
        f, gammas, witness = family_trace_power(F, 2, 1)
        nz = F.nonzero()
        fixed = nz[F.pow(nz, 16) == nz]
        assert len(fixed) == 15
        assert sorted(gammas.tolist()) == sorted(fixed.tolist())
        for g in gammas.tolist():
            w = witness(g)
            assert w.i == 1 and w.b == F.trace(F.pow(g, 5), 2)
            assert check_translator(f, w)
        found = {w.gamma for w in find_translators(f)}
        assert not found - set(fixed.tolist())


def _frobenius_perm_sweep(F, k, i, gs, rng, n_h=50):
    f, wit = family_binomial(F, i)
    sub = F.subfield(k).elements
    checked = 0
    for gamma in [F.alpha, F.exp_of(7)]:
        w = wit(gamma)
        assert w.b != 0
        L = LinearizedMap.random_permutation(F, k, rng)
        hs = [make_h_from_g(FunctionTable(F, k, g, k), w.b).values for g in gs]
        while len(hs) < len(gs) + n_h:
            h = sub[rng.integers(0, len(sub), len(sub))]
            if not is_perm_by_set(h):
                hs.append(h)
        for hv in hs:
            G = build_perm_frobenius(L, w, FunctionTable(F, k, hv, k), f)
            g_side = is_perm_by_set(F.add(sub, F.mul(w.b, hv)))
            assert G.certified == is_perm_by_set(G.values) == g_side
            checked += 1
    return checked


def test_criterion_03_frobenius_permutation_iff():
    with Budget(30):
        rng = np.random.default_rng(0)
        F16 = Field(2, 4)
        sub4 = F16.subfield(2).elements
        gs = [np.array(p) for p in itertools.permutations(sub4.tolist())]
        assert len(gs) == 24
        n1 = _frobenius_perm_sweep(F16, 2, 1, gs, rng)
        F81 = Field(3, 4)
        sub9 = F81.subfield(2).elements
        gs9 = [sub9[rng.permutation(9)] for _ in range(200)]
        n2 = _frobenius_perm_sweep(F81, 2, 1, gs9, rng)
        assert n1 == 2 * (24 + 50) and n2 == 2 * (200 + 50)


def test_criterion_04_subspace_equivalence_exhaustive():
    with Budget(5):
        F = Field(3, 2)
        Ls = [LinearizedMap(F, 1, lam) for lam in ((1, 0), (2, 0), (0, 1), (0, 2))]
        assert all(linmap_is_permutation(L) for L in Ls)
        cells = 0
        for L in Ls:
            for delta in range(9):
                for s in range(8):
                    res = verify_th_var2(L, s, delta)
                    assert res.equivalence
                    if (3 * s - s) % 8 == 0:
                        assert res.F_permutes
                    cells += 1
        assert cells == 288


def test_criterion_05_power_permutation_families():
    with Budget(30):
        F = Field(3, 6)
        k, pk = 3, 27
        rng = np.random.default_rng(0)
        S = subspace_S(F, k)
        xs = F.elements()
        for _ in range(20):
            L = LinearizedMap.random_permutation(F, k, rng, subfield_coeffs=True)
            s = 2 * int(rng.integers(1, (F.q - 1) // 2 + 1))
            delta = int(rng.choice(S))
            t = family_perSp(L, s, delta)
            assert t.certified and is_perm_by_set(t.values)
            assert np.all(F.pow(S, s * pk) == F.pow(S, s))
        for _ in range(20):
            L = LinearizedMap.random_permutation(F, k, rng, subfield_coeffs=True)
            t_exp = int(rng.integers(0, F.q - 1))
            delta = int(rng.integers(0, F.q))
            t = family_perSpdelta(L, t_exp, delta)
            assert t.certified and is_perm_by_set(t.values)
            e = t_exp * (pk + 1)
            assert np.all(F.sub(F.pow(xs, e), F.pow(xs, pk * e)) == 0)


def test_criterion_06_three_frobenius_translators():
    with Budget(10):
        F = Field(2, 8)
        i = 2
        f, wit = family_binomial(F, i)
        sub = set(F.subfield(4).elements.tolist())
        gammas = [F.exp_of(e) for e in (1, 3, 16)]
        found = equal_a_triples(F, i, limit=1)[0]
        for triple in (gammas, list(found)):
            total = F.add(F.add(triple[0], triple[1]), triple[2])
            assert total != 0
            assert len({wit(x).b for x in (*triple, total)}) == 1
            x, y, z = triple
            assert {F.add(x, y), F.add(x, z), F.add(y, z)} <= sub
        rng = np.random.default_rng(0)
        L = LinearizedMap.random_permutation(F, 4, rng, subfield_coeffs=True)
        g = FunctionTable(F, 4, F.subfield(4).elements[rng.permutation(16)], 4)
        cert, closed = bt.bent_con1(L, f, g, gammas, i)
        assert cert.function.m == 16
        assert len(bt.walsh_transform(cert.function).coefficients) == 65536
        assert cert.spectrum_extremes == (256, 256)
        assert np.array_equal(cert.dual.truth, closed.truth)


def test_criterion_07_duals_sum_to_one_example():
    with Budget(10):
        F = Field(2, 6)
        phis, hs = shift_quadruple(F)
        assert [int(p.values[0]) for p in phis] == [F.exp_of(e) for e in (1, 2, 3)]
        assert np.all(hs[1].truth == 0) and np.all(hs[2].truth == 1)
        certs, cond = bt.quadruple_duals_sum_one(phis, hs)
        assert all(c.function.m == 12 and c.spectrum_extremes == (64, 64) for c in certs)
        total = certs[0].dual.truth ^ certs[1].dual.truth ^ certs[2].dual.truth ^ certs[3].dual.truth
        assert cond and np.all(total == 1)
        ext = bt.extend_bent(*certs[:3])
        assert ext.function.m == 14 and ext.spectrum_extremes == (128, 128)


def test_criterion_08_zero_translator_and_trace_families():
    with Budget(10):
        F = Field(2, 6)
        xs = F.elements()
        rng = np.random.default_rng(0)
        f = FunctionTable(F, 2, F.trace(xs, 2))
        zeros = [x for x in F.nonzero().tolist() if F.trace(x, 2) == 0]
        gammas = next((a, b, c) for a in zeros for b in zeros for c in zeros
                      if a < b < c and a ^ b ^ c)
        g = FunctionTable(F, 2, F.subfield(2).elements[rng.permutation(4)], 2)
        cert = bt.bent_selfdual_zero_translators(gammas, g, f)
        assert cert.function.m == 12
        assert np.array_equal(cert.dual.truth, cert.function.truth)

        k, beta = 3, F.alpha
        ker = [x for x in F.nonzero().tolist() if F.trace(F.mul(x, beta), k) == 0]
        tg = next((a, b, c) for a in ker for b in ker for c in ker if a < b < c and a ^ b ^ c)
        L = LinearizedMap.random_permutation(F, k, rng)
        gk = FunctionTable(F, k, F.subfield(k).elements[rng.integers(0, 8, 8)], k)
        cert2, dual_cf, _ = bt.bent_trace_family(L, beta, gk, tg, k)
        assert cert2.spectrum_extremes == (64, 64)
        assert np.array_equal(cert2.dual.truth, dual_cf.truth)


@pytest.mark.parametrize("p,n,k", [(2, 6, 2), (3, 4, 2)])
def test_criterion_09_monomial_nonexistence(p, n, k):
    with Budget(60):
        F = Field(p, n)
        ds = subfield_monomial_exponents(F, k)
        assert 0 in ds
        for d in ds:
            if d == 0:
                continue  # constant map: zero derivative
            assert find_translators(monomial(F, d, k)) == [], f"d={d}"


def test_criterion_10_spectral_suite():
    rng = np.random.default_rng(0)
    for m in range(4, 15):
        for _ in range(100):
            f = bt.BooleanFunction(m, rng.integers(0, 2, 1 << m))
            assert bt.walsh_transform(f).parseval_ok()
    log = bt.certificate_log
    assert log, "no certificates were produced during the run"
    for cert in log:
        m = cert.function.m
        assert bt.dual_of(cert.dual, cert.pairing_map) == cert.function
        assert bt.algebraic_degree(cert.function) <= m // 2
        assert cert.degree <= m // 2
