"""Permutations of GF(p^n) built from translators, plus the subspace families.

Every builder certifies what it returns by an occupancy scan, and wherever
a theorem predicts an equivalence both sides are computed and compared on
every call.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    CompositionFailure,
    DeltaNotInS,
    EvenCharacteristic,
    InternalInconsistency,
    InvolutionFailure,
    NNotTwoK,
    NonzeroB,
    NotAPermutationG,
    NotATranslator,
    NotDistinct,
    OddCharacteristic,
    OddS,
    ScalarOutsideSubfield,
    SingularMap,
    TheoremViolation,
    ZeroA,
    ZeroB,
)
from .field import Field
from .translators import FunctionTable, TranslatorWitness, check_translator


@dataclass
class PermTable:
    """Evaluation table of a map GF(p^n) -> GF(p^n)."""

    field: Field
    values: np.ndarray
    certified: bool = False

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.int64)
        if self.values.shape != (self.field.q,):
            raise ValueError(f"table needs {self.field.q} values")

    def __call__(self, x):
        return self.values[x] if np.ndim(x) else int(self.values[int(x)])

    def inverse(self) -> PermTable:
        if not is_permutation(self):
            raise SingularMap("table is not a bijection")
        return PermTable(self.field, inverse_table(self.values), certified=True)

    def __eq__(self, other) -> bool:
        return (isinstance(other, PermTable) and self.field == other.field
                and bool(np.array_equal(self.values, other.values)))

    __hash__ = None


def inverse_table(values: np.ndarray) -> np.ndarray:
    inv = np.empty_like(values)
    inv[values] = np.arange(len(values), dtype=values.dtype)
    return inv


def is_permutation(t) -> bool:
    """Occupancy scan; certifies a PermTable in place when it passes.

    Accepts a PermTable, a FunctionTable (bijective on its own domain) or a
    raw array of indices into range(len(array)).
    """
    if isinstance(t, FunctionTable):
        if t.codomain_k != t.domain_k:
            return False
        vals = t.field.subfield(t.domain_k).position[t.values]
    else:
        vals = np.asarray(t.values if isinstance(t, PermTable) else t, dtype=np.int64)
    size = len(vals)
    if np.any(vals < 0) or np.any(vals >= size):
        return False
    seen = np.zeros(size, dtype=bool)
    seen[vals] = True
    ok = bool(seen.all())
    if isinstance(t, PermTable):
        t.certified = ok
    return ok


# --- linearized maps ---------------------------------------------------------

@dataclass
class LinearizedMap:
    """L(x) = sum_j lambdas[j] * x^(p^(k*j)), j < n/k."""

    field: Field
    k: int
    lambdas: tuple
    subfield_coeffs: bool = False

    def __post_init__(self):
        F = self.field
        F.subfield(self.k)
        self.lambdas = tuple(int(c) for c in self.lambdas)
        if len(self.lambdas) != F.n // self.k:
            raise ValueError(f"need {F.n // self.k} coefficients")
        if self.subfield_coeffs and not F.subfield(self.k).contains_all(np.array(self.lambdas)):
            raise ScalarOutsideSubfield(f"coefficients must lie in GF({F.p}^{self.k})")

    @property
    def table(self) -> np.ndarray:
        F = self.field
        xs = F.elements()
        out = np.zeros(F.q, dtype=np.int64)
        for j, lam in enumerate(self.lambdas):
            out = F.add(out, F.mul(lam, F.frobenius_pow(xs, self.k * j)))
        return out

    def __call__(self, x):
        F = self.field
        out = 0 if np.ndim(x) == 0 else np.zeros(np.shape(x), dtype=np.int64)
        for j, lam in enumerate(self.lambdas):
            out = F.add(out, F.mul(lam, F.frobenius_pow(x, self.k * j)))
        return out

    @classmethod
    def identity(cls, field: Field, k: int) -> LinearizedMap:
        return cls(field, k, (1,) + (0,) * (field.n // k - 1))

    @classmethod
    def random_permutation(cls, field: Field, k: int, rng: np.random.Generator,
                           subfield_coeffs: bool = False) -> LinearizedMap:
        pool = field.subfield(k).elements if subfield_coeffs else field.elements()
        while True:
            lams = tuple(int(c) for c in rng.choice(pool, size=field.n // k))
            L = cls(field, k, lams, subfield_coeffs)
            if linmap_is_permutation(L):
                return L


def linmap_apply(L: LinearizedMap) -> PermTable:
    return PermTable(L.field, L.table)


def linmap_is_permutation(L: LinearizedMap) -> bool:
    # additive map: bijective iff the kernel is trivial
    return int(np.count_nonzero(L.table == 0)) == 1


def linmap_invert(L: LinearizedMap) -> PermTable:
    if not linmap_is_permutation(L):
        raise SingularMap("L has a nontrivial kernel")
    return PermTable(L.field, inverse_table(L.table), certified=True)


# --- permutations from translators ----------------------------------------------

def _subfield_perm(g: FunctionTable, k: int) -> None:
    if g.domain_k != k or g.codomain_k != k or not is_permutation(g):
        raise NotAPermutationG(f"g must permute GF(p^{k})")


def _require_translator(f: FunctionTable, w: TranslatorWitness) -> None:
    if not check_translator(f, w):
        raise NotATranslator(f"{w} is not a translator of f")


def build_perm_frobenius(L: LinearizedMap, w: TranslatorWitness, h: FunctionTable,
                         f: FunctionTable) -> PermTable:
    """G(x) = L(x)^(p^i) + L(gamma)^(p^i) h(f(x)).

    G permutes GF(p^n) exactly when u -> u + b h(u) permutes GF(p^k); both
    sides are evaluated and must agree.
    """
    F, k = f.field, f.codomain_k
    _require_translator(f, w)
    if not linmap_is_permutation(L):
        raise SingularMap("L must be a permutation")
    if h.domain_k != k or h.codomain_k != k:
        raise ValueError(f"h must map GF(p^{k}) to itself")
    Lx = L.table
    Lg = int(Lx[w.gamma])
    G = F.add(F.frobenius_pow(Lx, w.i), F.mul(F.frobenius_pow(Lg, w.i), h(f.values)))
    table = PermTable(F, G)
    u = h.domain
    g_side = is_permutation(FunctionTable(F, k, F.add(u, F.mul(w.b, h.values)), k))
    if is_permutation(table) != g_side:
        raise InternalInconsistency("G permutes iff u + b h(u) permutes: sides disagree")
    return table


def make_h_from_g(g: FunctionTable, b: int) -> FunctionTable:
    """h(u) = (g(u) - u) / b, so that u + b h(u) = g(u)."""
    F, k = g.field, g.domain_k
    if b == 0:
        raise ZeroB("b must be nonzero")
    _subfield_perm(g, k)
    u = g.domain
    h = FunctionTable(F, k, F.div(F.sub(g.values, u), b), k)
    if not np.array_equal(F.add(u, F.mul(b, h.values)), g.values):
        raise InternalInconsistency("u + b h(u) != g(u)")
    return h


def build_phi_sihem(L: LinearizedMap, w: TranslatorWitness, g: FunctionTable,
                    f: FunctionTable) -> tuple[PermTable, PermTable]:
    """phi(x) = L(x) + L(gamma) (g(f(x)) + f(x)/a)^(2^(n-i)) and its inverse.

    The inverse is L^-1(x) + gamma a^(-2^(n-i)) (f(z) + g^-1(f(z)/a))^(2^(n-i))
    with z = L^-1(x).  Both compositions are checked pointwise.
    """
    F, k = f.field, f.codomain_k
    if F.p != 2:
        raise OddCharacteristic("defined in characteristic 2 only")
    a, i, n = w.b, w.i, F.n
    if a == 0:
        raise ZeroA("the translator constant a must be nonzero")
    _require_translator(f, w)
    _subfield_perm(g, k)
    if not linmap_is_permutation(L):
        raise SingularMap("L must be a permutation")

    ginv = FunctionTable(F, k, g.domain[inverse_table(g.field.subfield(k).position[g.values])], k)
    Lx = L.table
    Linv = inverse_table(Lx)
    fx = f.values
    rho = F.frobenius_pow(F.add(g(fx), F.div(fx, a)), n - i)
    phi = F.add(Lx, F.mul(int(Lx[w.gamma]), rho))

    fz = fx[Linv]
    corr = F.frobenius_pow(F.add(fz, ginv(F.div(fz, a))), n - i)
    coef = F.mul(w.gamma, F.inv(F.frobenius_pow(a, n - i)))
    phi_inv = F.add(Linv, F.mul(coef, corr))

    ident = F.elements()
    if not (np.array_equal(phi[phi_inv], ident) and np.array_equal(phi_inv[phi], ident)):
        raise CompositionFailure("phi and its closed-form inverse do not compose to identity")
    return PermTable(F, phi, certified=True), PermTable(F, phi_inv, certified=True)


def check_An(phi1: PermTable, phi2: PermTable, phi3: PermTable) -> bool:
    """Pairwise distinct permutations whose sum permutes, with inverse = sum of inverses."""
    phis = (phi1, phi2, phi3)
    F = phi1.field
    if any(p.field != F for p in phis):
        raise ValueError("permutations over different fields")
    if phi1 == phi2 or phi1 == phi3 or phi2 == phi3:
        raise NotDistinct("the three permutations must be pairwise distinct")
    if not all(is_permutation(p) for p in phis):
        return False
    psi = PermTable(F, F.add(F.add(phi1.values, phi2.values), phi3.values))
    if not is_permutation(psi):
        return False
    inv_sum = F.add(F.add(*(inverse_table(p.values) for p in phis[:2])),
                    inverse_table(phi3.values))
    return bool(np.array_equal(inverse_table(psi.values), inv_sum))


def involution_from_zero_translator(w: TranslatorWitness, g: FunctionTable,
                                    f: FunctionTable) -> PermTable:
    """F(x) = x + gamma g(f(x)) for a 0-translator gamma; always an involution."""
    F, k = f.field, f.codomain_k
    if F.p != 2:
        raise OddCharacteristic("defined in characteristic 2 only")
    if w.b != 0:
        raise NonzeroB("gamma must be a 0-translator")
    _require_translator(f, w)
    if g.domain_k != k or g.codomain_k != k:
        raise ValueError(f"g must map GF(2^{k}) to itself")
    vals = F.add(F.elements(), F.mul(w.gamma, g(f.values)))
    if not np.array_equal(vals[vals], F.elements()):
        raise InvolutionFailure("F(F(x)) != x")
    t = PermTable(F, vals)
    is_permutation(t)
    return t


# --- permuting the trace-zero subspace (odd characteristic, n = 2k) -----------

def _half(field: Field, k: int | None = None) -> int:
    if field.n % 2 or (k is not None and 2 * k != field.n):
        raise NNotTwoK(f"n={field.n} is not twice k={k}")
    return field.n // 2


def subspace_S(field: Field, k: int) -> np.ndarray:
    """{y : T^n_k(y) = 0}, cross-checked against {b - b^(p^k)}."""
    F = field
    _half(F, k)
    xs = F.elements()
    kernel = xs[F.trace(xs, k) == 0]
    image = np.unique(F.sub(xs, F.frobenius_pow(xs, k)))
    if not np.array_equal(kernel, image):
        raise InternalInconsistency("trace kernel differs from {b - b^(p^k)}")
    return kernel


def _half_degree(L: LinearizedMap) -> int:
    F = L.field
    if F.p == 2:
        raise EvenCharacteristic("requires odd characteristic")
    k = _half(F, L.k)
    if not F.subfield(k).contains_all(np.array(L.lambdas)):
        raise ScalarOutsideSubfield(f"L needs coefficients in GF({F.p}^{k})")
    if not linmap_is_permutation(L):
        raise SingularMap("L must be a permutation")
    return k


def _subspace_F(L: LinearizedMap, s: int, delta: int) -> np.ndarray:
    F, k = L.field, L.k
    xs = F.elements()
    inner = F.add(F.sub(F.frobenius_pow(xs, k), xs), delta)
    return F.add(L.table, F.pow(inner, s))


class SubspaceEquivalence(NamedTuple):
    F: PermTable
    G_on_S: dict
    equivalence: bool
    F_permutes: bool
    G_permutes: bool


def verify_th_var2(L: LinearizedMap, s: int, delta: int) -> SubspaceEquivalence:
    """F(x) = L(x) + (x^(p^k) - x + delta)^s against G restricted to S.

    G(y) = -L(y) + (y + delta)^s - (y + delta)^(p^k s).  F permutes the
    field iff G permutes S; any disagreement raises TheoremViolation, as does
    a non-permutation F when p^k s = s mod (p^n - 1).
    """
    Fd = L.field
    k = _half_degree(L)
    S = subspace_S(Fd, k)
    Ftab = PermTable(Fd, _subspace_F(L, s, delta))
    f_perm = is_permutation(Ftab)

    ys = Fd.add(S, delta)
    G = Fd.add(Fd.neg(L(S)), Fd.sub(Fd.pow(ys, s), Fd.pow(ys, Fd.p ** k * s)))
    in_S = np.isin(G, S)
    g_perm = bool(in_S.all()) and len(np.unique(G)) == len(S)
    if f_perm != g_perm:
        raise TheoremViolation(f"s={s}, delta={delta}: F permutes={f_perm}, G permutes S={g_perm}")
    if (Fd.p ** k * s - s) % (Fd.q - 1) == 0 and not f_perm:
        raise TheoremViolation(f"s={s} satisfies p^k s = s but F is not a permutation")
    return SubspaceEquivalence(Ftab, dict(zip(S.tolist(), G.tolist())), True, f_perm, g_perm)


def family_perSp(L: LinearizedMap, s: int, delta: int) -> PermTable:
    """L(x) + (x^(p^k) - x + delta)^s for delta in S and even s."""
    Fd = L.field
    k = _half_degree(L)
    S = subspace_S(Fd, k)
    if delta not in set(S.tolist()):
        raise DeltaNotInS("delta must have zero relative trace")
    if s % 2 or not 2 <= s <= Fd.q - 1:
        raise OddS(f"s={s} must be even in [2, {Fd.q - 1}]")
    if not np.array_equal(Fd.pow(S, s * Fd.p ** k), Fd.pow(S, s)):
        raise InternalInconsistency("a^(s p^k) != a^s on S")
    t = PermTable(Fd, _subspace_F(L, s, delta))
    if not is_permutation(t):
        raise TheoremViolation(f"s={s}, delta={delta} did not give a permutation")
    return t


def family_perSpdelta(L: LinearizedMap, t: int, delta: int) -> PermTable:
    """L(x) + (x^(p^k) - x + delta)^(t (p^k + 1)) for any delta."""
    Fd = L.field
    k = _half_degree(L)
    if t < 0:
        raise ValueError("t must be non-negative")
    s = t * (Fd.p ** k + 1)
    xs = Fd.elements()
    if np.any(Fd.sub(Fd.pow(xs, s), Fd.pow(xs, Fd.p ** k * s)) != 0):
        raise InternalInconsistency("x^s - x^(p^k s) is not identically zero")
    tab = PermTable(Fd, _subspace_F(L, s, delta))
    if not is_permutation(tab):
        raise TheoremViolation(f"t={t}, delta={delta} did not give a permutation")
    return tab
