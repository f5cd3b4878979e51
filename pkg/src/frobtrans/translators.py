"""Frobenius translators: checking, exhaustive search, algebra, and families.

An element gamma != 0 is an (i, b)-Frobenius translator of
f: GF(p^n) -> GF(p^k) when

    f(x + u*gamma) - f(x) = u^(p^i) * b    for all x in GF(p^n), u in GF(p^k).

i = 0 is the classical linear translator.  Everything here works on full
lookup tables, so every claim is checked exhaustively.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    BadL,
    CodomainMismatch,
    ConditionNotSatisfied,
    EvenCharacteristic,
    InternalInconsistency,
    MismatchedFrobeniusIndex,
    NNotFourK,
    NoSolution,
    NoTranslator,
    NotATranslator,
    OddCharacteristic,
    OddN,
    ScalarOutsideSubfield,
    ZeroGamma,
)
from .field import Field


@dataclass
class FunctionTable:
    """A map GF(p^d) -> GF(p^k) stored as a lookup table.

    The domain is the subfield of degree ``domain_k`` (the whole field by
    default); ``values[j]`` is the image of the j-th domain element in
    canonical order.
    """

    field: Field
    codomain_k: int
    values: np.ndarray
    domain_k: int | None = None

    def __post_init__(self):
        F = self.field
        if self.domain_k is None:
            self.domain_k = F.n
        self.values = np.asarray(self.values, dtype=np.int64)
        expected = F.p ** self.domain_k
        if self.values.shape != (expected,):
            raise ValueError(f"table needs {expected} values, got {self.values.shape}")
        if not F.subfield(self.codomain_k).contains_all(self.values):
            raise CodomainMismatch(f"values leave GF({F.p}^{self.codomain_k})")
        F.subfield(self.domain_k)  # validates the divisor

    @property
    def domain(self) -> np.ndarray:
        return self.field.subfield(self.domain_k).elements

    @property
    def on_whole_field(self) -> bool:
        return self.domain_k == self.field.n

    def __call__(self, x):
        if self.on_whole_field:
            return self.values[x] if np.ndim(x) else int(self.values[int(x)])
        pos = self.field.subfield(self.domain_k).position[np.asarray(x)]
        if np.any(pos < 0):
            raise CodomainMismatch("argument outside the function's domain")
        return self.values[pos] if np.ndim(x) else int(self.values[int(pos)])

    def image_size(self) -> int:
        return len(np.unique(self.values))

    @classmethod
    def from_callable(cls, field: Field, codomain_k: int, fn, domain_k: int | None = None):
        dom = field.subfield(domain_k or field.n).elements
        return cls(field, codomain_k, fn(dom), domain_k)


@dataclass(frozen=True)
class TranslatorWitness:
    """Claim that ``gamma`` is an (i, b)-Frobenius translator."""

    gamma: int
    i: int
    b: int


def _witness(f: FunctionTable, gamma: int, i: int, b: int) -> TranslatorWitness:
    return TranslatorWitness(int(gamma), i % f.codomain_k, int(b))


def _require_full_domain(f: FunctionTable) -> None:
    if not f.on_whole_field:
        raise CodomainMismatch("translators are defined for functions on the whole field")


def derivative(f: FunctionTable, gamma: int, u: int) -> np.ndarray:
    """x -> f(x + u*gamma) - f(x) over the whole field."""
    F = f.field
    xs = F.elements()
    return F.sub(f.values[F.add(xs, F.mul(u, gamma))], f.values)


def check_translator(f: FunctionTable, w: TranslatorWitness) -> bool:
    """Exhaustive check of the translator identity over all (x, u)."""
    _require_full_domain(f)
    F, k = f.field, f.codomain_k
    if w.gamma == 0:
        raise ZeroGamma("gamma must be nonzero")
    if w.b not in F.subfield(k):
        raise CodomainMismatch(f"b lies outside GF({F.p}^{k})")
    for u in F.subfield(k).elements:
        rhs = F.mul(F.frobenius_pow(int(u), w.i), w.b)
        if not np.all(derivative(f, w.gamma, int(u)) == rhs):
            return False
    return True


def find_translators(f: FunctionTable) -> list[TranslatorWitness]:
    """Every (gamma, i, b) witness of f, sorted by (log gamma, i).

    u = 1, x = 0 pins b = f(gamma) - f(0) whatever i is, so only k
    candidates per gamma need checking.
    """
    _require_full_domain(f)
    F, k = f.field, f.codomain_k
    sub = F.subfield(k).elements
    f0 = int(f.values[0])
    found = []
    for gamma in F.nonzero().tolist():
        b = F.sub(int(f.values[gamma]), f0)
        consts = []
        for u in sub.tolist():
            d = derivative(f, gamma, u)
            if not np.all(d == d[0]):
                break
            consts.append(int(d[0]))
        else:
            consts = np.array(consts)
            for i in range(k):
                if np.all(consts == F.mul(F.frobenius_pow(sub, i), b)):
                    found.append(TranslatorWitness(gamma, i, b))
    found.sort(key=lambda w: (F.discrete_log(w.gamma), w.i))
    return found


def _require_witness(f: FunctionTable, w: TranslatorWitness) -> None:
    if not check_translator(f, w):
        raise NotATranslator(f"{w} is not a translator of f")


def translator_sum(w1: TranslatorWitness, w2: TranslatorWitness,
                   f: FunctionTable) -> TranslatorWitness:
    """(gamma1 + gamma2, i, b1 + b2) for two witnesses sharing i."""
    F, k = f.field, f.codomain_k
    if w1.i % k != w2.i % k:
        raise MismatchedFrobeniusIndex(f"i={w1.i} vs i={w2.i}")
    gamma = F.add(w1.gamma, w2.gamma)
    if gamma == 0:
        raise ZeroGamma("gamma1 + gamma2 = 0")
    _require_witness(f, w1)
    _require_witness(f, w2)
    out = _witness(f, gamma, w1.i, F.add(w1.b, w2.b))
    if not check_translator(f, out):
        raise InternalInconsistency(f"sum {out} failed the translator check")
    return out


def translator_scale(w: TranslatorWitness, c: int, f: FunctionTable) -> TranslatorWitness:
    """(c*gamma, i, c^(p^i) * b) for nonzero c in GF(p^k)."""
    F, k = f.field, f.codomain_k
    if c == 0 or c not in F.subfield(k):
        raise ScalarOutsideSubfield(f"c must be a nonzero element of GF({F.p}^{k})")
    _require_witness(f, w)
    out = _witness(f, F.mul(c, w.gamma), w.i, F.mul(F.frobenius_pow(c, w.i), w.b))
    if not check_translator(f, out):
        raise InternalInconsistency(f"scaled {out} failed the translator check")
    return out


# --- families ---------------------------------------------------------------

def _r(field: Field, k: int) -> int:
    field.subfield(k)
    return field.n // k


def family_trace_power(field: Field, k: int, ell: int):
    """f(x) = T^n_k(x^(2^(ell*k) + 1)) and its admissible translators.

    Returns ``(f, gammas, witness)`` where ``gammas`` are the nonzero fixed
    points of x -> x^(2^(2*ell*k)) and ``witness(gamma)`` gives the
    (1, T^n_k(gamma^(2^(ell*k)+1))) witness.
    """
    if field.p != 2:
        raise OddCharacteristic("this family lives in characteristic 2")
    r = _r(field, k)
    if not 1 <= ell <= r - 1:
        raise BadL(f"ell={ell} outside [1, {r - 1}]")
    F = field
    xs = F.elements()
    vals = F.trace(F.mul(F.frobenius_pow(xs, ell * k), xs), k)
    f = FunctionTable(F, k, vals)
    nz = F.nonzero()
    gammas = nz[F.frobenius_pow(nz, 2 * ell * k) == nz]

    def witness(gamma: int) -> TranslatorWitness:
        b = F.trace(F.mul(F.frobenius_pow(gamma, ell * k), gamma), k)
        return _witness(f, gamma, 1, b)

    return f, gammas, witness


def family_binomial(field: Field, i_prime: int):
    """f(x) = x^(p^i') + x^(p^(i'+n/2)) into GF(p^(n/2)); every gamma works."""
    F = field
    if F.n % 2:
        raise OddN(f"n={F.n} is odd")
    k = F.n // 2
    xs = F.elements()
    f = FunctionTable(F, k, F.add(F.frobenius_pow(xs, i_prime), F.frobenius_pow(xs, i_prime + k)))

    def witness(gamma: int) -> TranslatorWitness:
        b = F.add(F.frobenius_pow(gamma, i_prime), F.frobenius_pow(gamma, i_prime + k))
        return _witness(f, gamma, i_prime, b)

    return f, witness


def family_double_trace(field: Field, k: int):
    """f(x) = T^n_k(x) + T^n_{2k}(x) for n = 4k, with its known translators.

    Odd p: the gammas with gamma + gamma^(p^(2k)) = 0, as (gamma, 0, 0).
    p = 2: every gamma, as (gamma, k, gamma^(p^k) + gamma^(p^(3k))).
    """
    F = field
    if k < 1 or F.n != 4 * k:
        raise NNotFourK(f"n={F.n} is not 4*{k}")
    xs = F.elements()
    f = FunctionTable(F, 2 * k, F.add(F.trace(xs, k), F.trace(xs, 2 * k)))
    nz = F.nonzero()
    if F.p == 2:
        bs = F.add(F.frobenius_pow(nz, k), F.frobenius_pow(nz, 3 * k))
        report = [_witness(f, g, k, b) for g, b in zip(nz.tolist(), bs.tolist())]
    else:
        zero = F.add(nz, F.frobenius_pow(nz, 2 * k)) == 0
        report = [_witness(f, g, 0, 0) for g in nz[zero].tolist()]
    return f, report


def subfield_monomial_exponents(field: Field, k: int) -> list[int]:
    """Exponents d in [0, p^n - 1] for which x^d lands in GF(p^k)."""
    F = field
    xs = F.elements()
    view = F.subfield(k)
    return [d for d in range(F.q) if view.contains_all(F.pow(xs, d))]


def monomial(field: Field, d: int, k: int) -> FunctionTable:
    return FunctionTable(field, k, field.pow(field.elements(), d))


# --- the quadratic trace family T^n_k(beta x^(p^i + p^(i+lk))) -------------

def _check_l(field: Field, k: int, l: int) -> int:
    r = _r(field, k)
    if not 0 < l < r:
        raise BadL(f"l={l} must satisfy 0 < l < r={r}")
    return r


def quad_trace_function(field: Field, beta: int, i: int, l: int, k: int) -> FunctionTable:
    _check_l(field, k, l)
    F = field
    xs = F.elements()
    mono = F.mul(F.frobenius_pow(xs, i), F.frobenius_pow(xs, i + l * k))
    return FunctionTable(F, k, F.trace(F.mul(beta, mono), k))


def quad_trace_condition(field: Field, beta: int, gamma: int, i: int, l: int, k: int) -> bool:
    """beta*gamma^(p^(i+lk)) + beta^(p^((r-l)k)) * gamma^(p^(i+(r-l)k)) == 0."""
    r = _check_l(field, k, l)
    F = field
    t1 = F.mul(beta, F.frobenius_pow(gamma, i + l * k))
    t2 = F.mul(F.frobenius_pow(beta, (r - l) * k), F.frobenius_pow(gamma, i + (r - l) * k))
    return F.add(t1, t2) == 0


def _abmod_congruence(field: Field, a: int, i: int, l: int, k: int) -> tuple[int, int, int]:
    """Coefficients (c, d, N) of c*b == d (mod N) equivalent to the condition.

    With gamma = alpha^a and beta = alpha^b the condition reads
    alpha^(b + a p^(i+lk)) = -alpha^(b p^m + a p^(i+m)), m = (r-l)k.
    """
    F = field
    r = _check_l(F, k, l)
    N = F.q - 1
    p = F.p
    m = (r - l) * k
    d = a * (pow(p, i + m, N) - pow(p, i + l * k, N))
    if p != 2:
        d -= N // 2  # -1 = alpha^(N/2)
    return (1 - pow(p, m, N)) % N, d % N, N


def abmod_solutions(field: Field, a: int, i: int, l: int, k: int) -> list[int]:
    """All b in [0, p^n - 1) with quad_trace_condition(alpha^b, alpha^a) true."""
    from math import gcd

    c, d, N = _abmod_congruence(field, a, i, l, k)
    g = gcd(c, N)
    if d % g:
        return []
    step = N // g
    b0 = (d // g) * pow(c // g, -1, step) % step if step > 1 else 0
    return list(range(b0, N, step))


def abmod_exponent(field: Field, a: int, i: int, l: int, k: int) -> int:
    """Exponent b such that beta = alpha^b pairs with gamma = alpha^a.

    p = 2 uses the closed form -a p^(i+lk) (p^((r-l)k) + 1) mod (p^n - 1).
    Odd p solves the exact congruence and returns its smallest solution.
    Either way the answer is re-checked against the defining equation.
    """
    F = field
    r = _check_l(F, k, l)
    N = F.q - 1
    if F.p == 2:
        b = (-a * F.p ** (i + l * k) * (F.p ** ((r - l) * k) + 1)) % N
    else:
        sols = abmod_solutions(F, a, i, l, k)
        if not sols:
            raise NoSolution(f"no beta = alpha^b pairs with gamma = alpha^{a}")
        b = sols[0]
    if not quad_trace_condition(F, F.exp_of(b), F.exp_of(a), i, l, k):
        raise InternalInconsistency(f"b={b} fails the quadratic trace condition")
    return b


def quad_trace_witness(field: Field, beta: int, gamma: int, i: int, l: int,
                       k: int) -> TranslatorWitness:
    """The translator that the quadratic trace family guarantees for gamma.

    The derivative is u^(2 p^i) * T^n_k(beta gamma^(p^i + p^(i+lk))): in
    characteristic 2 that is index i+1; for odd p only b = 0 works.
    """
    F = field
    if not quad_trace_condition(F, beta, gamma, i, l, k):
        raise ConditionNotSatisfied("beta and gamma do not satisfy the trace condition")
    f = quad_trace_function(F, beta, i, l, k)
    mono = F.mul(F.frobenius_pow(gamma, i), F.frobenius_pow(gamma, i + l * k))
    t = F.trace(F.mul(beta, mono), k)
    if F.p == 2:
        w = _witness(f, gamma, i + 1, t)
    elif t == 0:
        w = _witness(f, gamma, 0, 0)
    else:
        raise NoTranslator("odd characteristic forces b = 0, but the trace is nonzero")
    if not check_translator(f, w):
        raise InternalInconsistency(f"{w} fails the exhaustive check")
    return w


WitnessGenerator = Callable[[int], TranslatorWitness]


def quad_trace_odd_prediction(field: Field, i: int, l: int, k: int) -> np.ndarray:
    """Nonzero gamma with gamma^(p^(2kl) - 1) = -1 and T^n_k(gamma^(p^i + p^(i+lk))) = 0.

    For odd p and beta in GF(p^k) these are claimed to be exactly the gammas
    that can translate T^n_k(beta x^(p^i + p^(i+lk))), always with b = 0.
    """
    F = field
    if F.p == 2:
        raise EvenCharacteristic("the prediction concerns odd characteristic")
    _check_l(F, k, l)
    nz = F.nonzero()
    c1 = F.pow(nz, F.p ** (2 * k * l) - 1) == F.neg(1)
    c2 = F.trace(F.pow(nz, F.p ** i + F.p ** (i + l * k)), k) == 0
    return nz[c1 & c2]
