"""Boolean functions, Walsh spectra, bentness, duals, and the bent constructions.

Two-variable functions on GF(2^n)^2 are stored with input index
``index(y) * 2^n + index(x)``.  The Walsh transform itself uses the bitwise
dot product; a *pairing* re-indexes the spectrum so that a different inner
product on the inputs is used instead:

* ``"dot"``      - <a, x> = popcount(a & x) mod 2
* ``"trace"``    - <(a, b), (x, y)> = Tr(ax) + Tr(by)
* ``"swapped"``  - <(a, b), (x, y)> = Tr(ay) + Tr(bx)

Bentness does not depend on the pairing, duals do.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from .errors import (
    AnConditionFailed,
    DualMismatch,
    InternalInconsistency,
    InverseMismatch,
    NotAPermutation,
    NotBent,
    NotSelfDual,
    OddCharacteristic,
    OddM,
    PreconditionFailed,
    TheoremViolation,
    TraceConditionFailed,
    TranslatorPreconditionFailed,
    ZeroA,
    ZeroShift,
)
from .field import Field
from .perms import (
    LinearizedMap,
    PermTable,
    build_phi_sihem,
    check_An,
    inverse_table,
    involution_from_zero_translator,
    is_permutation,
    linmap_invert,
)
from .translators import FunctionTable, TranslatorWitness, check_translator

# When set to a list, every BentCertificate produced is appended to it.
certificate_log: list | None = None


@dataclass
class BooleanFunction:
    m: int
    truth: np.ndarray
    tag: dict | None = dc_field(default=None, compare=False, repr=False)

    def __post_init__(self):
        self.truth = np.asarray(self.truth, dtype=np.uint8)
        if self.truth.shape != (1 << self.m,):
            raise ValueError(f"truth table needs 2^{self.m} entries")
        if np.any(self.truth > 1):
            raise ValueError("truth table entries must be 0 or 1")

    def __xor__(self, other: BooleanFunction) -> BooleanFunction:
        if other.m != self.m:
            raise ValueError("different numbers of variables")
        return BooleanFunction(self.m, self.truth ^ other.truth)

    __add__ = __xor__

    def __eq__(self, other) -> bool:
        return (isinstance(other, BooleanFunction) and other.m == self.m
                and bool(np.array_equal(self.truth, other.truth)))

    def __call__(self, x):
        return self.truth[x]

    @classmethod
    def constant(cls, m: int, value: int) -> BooleanFunction:
        return cls(m, np.full(1 << m, value, dtype=np.uint8))


@dataclass
class WalshSpectrum:
    m: int
    coefficients: np.ndarray

    def parseval_ok(self) -> bool:
        c = self.coefficients.astype(object) if self.m > 15 else self.coefficients
        return int((c * c).sum()) == 1 << (2 * self.m)


@dataclass
class BentCertificate:
    function: BooleanFunction
    dual: BooleanFunction
    spectrum_extremes: tuple[int, int]
    pairing: str = "dot"
    degree: int = 0
    # index map of the pairing (None for the dot product), for re-checking duals
    pairing_map: np.ndarray | None = dc_field(default=None, repr=False, compare=False)


# --- transforms -----------------------------------------------------------------

def _fwht(v: np.ndarray) -> np.ndarray:
    v = v.astype(np.int64).copy()
    n = len(v)
    h = 1
    while h < n:
        w = v.reshape(-1, 2, h)
        a = w[:, 0, :].copy()
        w[:, 0, :] += w[:, 1, :]
        w[:, 1, :] = a - w[:, 1, :]
        h *= 2
    return v


def walsh_transform(f: BooleanFunction, pairing=None) -> WalshSpectrum:
    """W(a) = sum_x (-1)^(f(x) + <a, x>) by the in-place butterfly."""
    raw = _fwht(1 - 2 * f.truth.astype(np.int64))
    tau = _pairing_table(f.m, pairing)
    return WalshSpectrum(f.m, raw if tau is None else raw[tau])


def anf(f: BooleanFunction) -> np.ndarray:
    """Moebius transform: coefficients of the algebraic normal form."""
    a = f.truth.copy()
    h = 1
    while h < len(a):
        w = a.reshape(-1, 2, h)
        w[:, 1, :] ^= w[:, 0, :]
        h *= 2
    return a


def algebraic_degree(f: BooleanFunction) -> int:
    coeffs = np.nonzero(anf(f))[0]
    if len(coeffs) == 0:
        return 0
    return max(bin(int(c)).count("1") for c in coeffs)


# --- pairings --------------------------------------------------------------------

def trace_dual_table(field: Field) -> np.ndarray:
    """tau with Tr(a x) = popcount(tau[a] & x) mod 2 in the polynomial basis."""
    if field.p != 2:
        raise OddCharacteristic("trace pairings are binary")
    F = field
    tr = F.abs_trace_table
    xs = F.elements()
    tau = np.zeros(F.q, dtype=np.int64)
    for j in range(F.n):
        tau |= tr[F.mul(xs, 1 << j)] << j
    return tau


@lru_cache(maxsize=32)
def pairing_table(field: Field, kind: str) -> np.ndarray:
    """Index map for a pairing on GF(2^n)^2 (see module docstring)."""
    tau = trace_dual_table(field)
    q, n = field.q, field.n
    a = np.tile(np.arange(q), q)      # low slot of the dual index
    b = np.repeat(np.arange(q), q)    # high slot
    if kind == "trace":
        return tau[a] | (tau[b] << n)
    if kind == "swapped":
        return tau[b] | (tau[a] << n)
    raise ValueError(f"unknown pairing {kind!r}")


class Pairing:
    """A named pairing bound to a field; hashable cache of its index map."""

    def __init__(self, field: Field, kind: str):
        self.field = field
        self.kind = kind
        self.table = pairing_table(field, kind)

    def __repr__(self) -> str:
        return f"Pairing({self.kind})"


def _pairing_table(m: int, pairing) -> np.ndarray | None:
    if pairing is None or isinstance(pairing, str) and pairing == "dot":
        return None
    table = pairing.table if isinstance(pairing, Pairing) else np.asarray(pairing)
    if table.shape != (1 << m,):
        raise ValueError("pairing does not match the number of variables")
    return table


def _pairing_name(pairing) -> str:
    if pairing is None:
        return "dot"
    if isinstance(pairing, Pairing):
        return pairing.kind
    return pairing if isinstance(pairing, str) else "custom"


# --- bentness --------------------------------------------------------------------

def is_bent(f: BooleanFunction) -> bool:
    if f.m % 2:
        raise OddM(f"m={f.m} is odd")
    w = walsh_transform(f).coefficients
    return bool(np.all(np.abs(w) == 1 << (f.m // 2)))


def dual_of(f: BooleanFunction, pairing=None) -> BooleanFunction:
    w = walsh_transform(f, pairing).coefficients
    if not np.all(np.abs(w) == 1 << (f.m // 2)):
        raise NotBent("function is not bent")
    return BooleanFunction(f.m, (w < 0).astype(np.uint8))


def certify_bent(f: BooleanFunction, pairing=None) -> BentCertificate:
    """Full-spectrum bentness check; also confirms dual(dual) = f."""
    if f.m % 2:
        raise OddM(f"m={f.m} is odd")
    w = walsh_transform(f, pairing).coefficients
    mag = np.abs(w)
    if not np.all(mag == 1 << (f.m // 2)):
        raise NotBent(f"|W| ranges over [{mag.min()}, {mag.max()}]")
    dual = BooleanFunction(f.m, (w < 0).astype(np.uint8))
    if dual_of(dual, pairing) != f:
        raise InternalInconsistency("dual of the dual differs from the function")
    cert = BentCertificate(f, dual, (int(mag.min()), int(mag.max())),
                           _pairing_name(pairing), algebraic_degree(f),
                           _pairing_table(f.m, pairing))
    if certificate_log is not None:
        certificate_log.append(cert)
    return cert


# --- grids over GF(2^n) x GF(2^n) ---------------------------------------------------

def _binary(field: Field) -> None:
    if field.p != 2:
        raise OddCharacteristic("bent constructions are binary")


def _tr_grid(F: Field, left, right) -> np.ndarray:
    """Tr(left * right) with broadcasting; rows index y, columns x."""
    return F.abs_trace_table[F.mul(left, right)].astype(np.uint8)


def _xy(F: Field):
    xs = F.elements()
    return xs[None, :], xs[:, None]


def _bf(F: Field, grid: np.ndarray, **tag) -> BooleanFunction:
    return BooleanFunction(2 * F.n, grid.reshape(-1), tag or None)


def _maj(a, b, c):
    return (a & b) ^ (a & c) ^ (b & c)


def mm_function(phi: PermTable, h: BooleanFunction | None = None,
                allow_nonpermutation: bool = False) -> BooleanFunction:
    """Maiorana-McFarland f(x, y) = Tr(x phi(y)) + h(y)."""
    F = phi.field
    _binary(F)
    if not is_permutation(phi) and not allow_nonpermutation:
        raise NotAPermutation("phi must be a permutation")
    X, Y = _xy(F)
    grid = _tr_grid(F, X, phi.values[Y])
    if h is not None:
        grid = grid ^ h.truth[Y]
    return _bf(F, grid, phi=phi, h=h)


def mm_dual_closed_form(phi: PermTable, h: BooleanFunction | None = None,
                        pairing: str = "trace") -> BooleanFunction:
    """Dual of Tr(x phi(y)) + h(y): Tr(y phi^-1(x)) + h(phi^-1(x)).

    Under the swapped pairing the roles of the slots exchange:
    Tr(x phi^-1(y)) + h(phi^-1(y)).
    """
    F = phi.field
    inv = inverse_table(phi.values)
    X, Y = _xy(F)
    if pairing == "trace":
        grid = _tr_grid(F, Y, inv[X])
        if h is not None:
            grid = grid ^ h.truth[inv[X]]
    elif pairing == "swapped":
        grid = _tr_grid(F, X, inv[Y])
        if h is not None:
            grid = grid ^ h.truth[inv[Y]]
    else:
        raise ValueError(f"unknown pairing {pairing!r}")
    return _bf(F, grid)


def bent_from_triple(phi1: PermTable, phi2: PermTable, phi3: PermTable,
                     pairing: str = "trace") -> BentCertificate:
    """H = f1 f2 + f1 f3 + f2 f3 with f_j = Tr(x phi_j(y)).

    The spectral dual is compared with the majority of Tr(phi_j^-1(x) y).
    """
    F = phi1.field
    _binary(F)
    if not check_An(phi1, phi2, phi3):
        raise AnConditionFailed("the permutations do not satisfy (A_n)")
    fs = [mm_function(p) for p in (phi1, phi2, phi3)]
    H = BooleanFunction(2 * F.n, _maj(*(f.truth for f in fs)), {"phis": (phi1, phi2, phi3)})
    cert = certify_bent(H, Pairing(F, pairing))
    duals = [mm_dual_closed_form(p, pairing=pairing).truth for p in (phi1, phi2, phi3)]
    if not np.array_equal(cert.dual.truth, _maj(*duals)):
        raise DualMismatch("spectral dual differs from the majority of the MM duals")
    return cert


# --- translator-based families -------------------------------------------------------

def _shared_translator(f: FunctionTable, gammas, i: int) -> int:
    """Common constant a of three (a, i) translators whose sum also qualifies."""
    F = f.field
    g1, g2, g3 = (int(g) for g in gammas)
    if len({g1, g2, g3}) < 3 or 0 in (g1, g2, g3):
        raise TranslatorPreconditionFailed("gammas must be nonzero and pairwise distinct")
    total = F.add(F.add(g1, g2), g3)
    if total == 0:
        raise TranslatorPreconditionFailed("gamma1 + gamma2 + gamma3 = 0")
    f0 = int(f.values[0])
    consts = {F.sub(int(f.values[g]), f0) for g in (g1, g2, g3, total)}
    if len(consts) != 1:
        raise TranslatorPreconditionFailed("the translators do not share one constant a")
    a = consts.pop()
    for g in (g1, g2, g3, total):
        if not check_translator(f, TranslatorWitness(g, i % f.codomain_k, a)):
            raise TranslatorPreconditionFailed(f"gamma={g} is not an ({a}, {i}) translator")
    return a


def _ginv(g: FunctionTable) -> FunctionTable:
    F, k = g.field, g.domain_k
    pos = F.subfield(k).position[g.values]
    return FunctionTable(F, k, g.domain[inverse_table(pos)], k)


def con1_rho(f: FunctionTable, g: FunctionTable, a: int, i: int) -> np.ndarray:
    """rho(y) = (g(f(y)) + f(y)/a)^(2^(n-i)) for every y."""
    F = f.field
    return F.frobenius_pow(F.add(g(f.values), F.div(f.values, a)), F.n - i)


def con1_rho_tilde(f: FunctionTable, g: FunctionTable, a: int, i: int,
                   scale: int | None = None) -> np.ndarray:
    """scale * (g^-1(f(z)/a) + f(z))^(2^(n-i)) for every z.

    The default scale a^(-2^(n-i)) is the one that inverts the permutations;
    pass another value to evaluate alternative printed forms.
    """
    F = f.field
    if scale is None:
        scale = F.inv(F.frobenius_pow(a, F.n - i))
    inner = F.add(_ginv(g)(F.div(f.values, a)), f.values)
    return F.mul(scale, F.frobenius_pow(inner, F.n - i))


def con1_functions(L: LinearizedMap, f: FunctionTable, g: FunctionTable, gammas,
                   a: int, i: int, scale: int | None = None):
    """The explicit H and closed-form H* of the generalized construction."""
    F = f.field
    X, Y = _xy(F)
    Lx = L.table
    Linv = linmap_invert(L).values
    rho = con1_rho(f, g, a, i)
    terms = [_tr_grid(F, F.mul(int(Lx[gm]), X), rho[Y]) for gm in gammas]
    H = _tr_grid(F, X, Lx[Y]) ^ _maj(*terms)
    rt = con1_rho_tilde(f, g, a, i, scale)[Linv]
    dterms = [_tr_grid(F, F.mul(int(gm), Y), rt[X]) for gm in gammas]
    Hs = _tr_grid(F, Y, Linv[X]) ^ _maj(*dterms)
    return _bf(F, H), _bf(F, Hs)


def bent_con1(L: LinearizedMap, f: FunctionTable, g: FunctionTable, gammas,
              i: int, a: int | None = None) -> tuple[BentCertificate, BooleanFunction]:
    """Bent H from three shared (a, i) Frobenius translators, with its dual.

    H(x, y) = Tr(x L(y)) + maj_j Tr(L(gamma_j) x rho(y)); the spectral dual
    must match Tr(y L^-1(x)) + maj_j Tr(gamma_j y rho~(L^-1(x))).
    """
    F = f.field
    _binary(F)
    shared = _shared_translator(f, gammas, i)
    if a is not None and int(a) != shared:
        raise TranslatorPreconditionFailed(f"the translators share a={shared}, not {a}")
    a = shared
    if a == 0:
        raise ZeroA("the shared translator constant must be nonzero")
    if not is_permutation(g) or g.domain_k != f.codomain_k:
        raise PreconditionFailed("g must permute GF(2^k)")
    H, Hs = con1_functions(L, f, g, gammas, a, i)
    cert = certify_bent(H, Pairing(F, "trace"))
    if cert.dual != Hs:
        raise DualMismatch("spectral dual differs from the closed form")
    cert.function.tag = {"a": a, "i": i, "gammas": tuple(int(x) for x in gammas)}
    return cert, Hs


def con1_via_permutations(L: LinearizedMap, f: FunctionTable, g: FunctionTable,
                          gammas, i: int) -> BentCertificate:
    """Same H assembled from the three phi permutations and (A_n)."""
    a = _shared_translator(f, gammas, i)
    phis = [build_phi_sihem(L, TranslatorWitness(int(gm), i % f.codomain_k, a), g, f)[0]
            for gm in gammas]
    return bent_from_triple(*phis)


# --- duals summing to one ---------------------------------------------------------------

def cond_theta(phis, hs) -> np.ndarray:
    """h1(phi1^-1) + h2(phi2^-1) + h3(phi3^-1) + (h1+h2+h3)(psi^-1), pointwise."""
    F = phis[0].field
    psi = F.add(F.add(phis[0].values, phis[1].values), phis[2].values)
    out = np.zeros(F.q, dtype=np.uint8)
    for p, h in zip(phis, hs):
        out ^= h.truth[inverse_table(p.values)]
    hsum = hs[0].truth ^ hs[1].truth ^ hs[2].truth
    return out ^ hsum[inverse_table(psi)]


def quadruple_duals_sum_one(phis, hs):
    """MM functions f_j = Tr(x phi_j(y)) + h_j(y), f4 = f1 + f2 + f3.

    Returns the four certificates and whether f1* + f2* + f3* + f4* = 1.
    """
    phi1, phi2, phi3 = phis
    F = phi1.field
    _binary(F)
    if not check_An(phi1, phi2, phi3):
        raise AnConditionFailed("the permutations do not satisfy (A_n)")
    fs = [mm_function(p, h) for p, h in zip(phis, hs)]
    f4 = fs[0] ^ fs[1] ^ fs[2]
    psi = PermTable(F, F.add(F.add(phi1.values, phi2.values), phi3.values))
    if f4 != mm_function(psi, hs[0] ^ hs[1] ^ hs[2]):
        raise InternalInconsistency("f1 + f2 + f3 is not the MM function of the sums")
    pairing = Pairing(F, "trace")
    certs = [certify_bent(fn, pairing) for fn in (*fs, f4)]
    total = certs[0].dual.truth ^ certs[1].dual.truth ^ certs[2].dual.truth ^ certs[3].dual.truth
    condition = bool(np.all(total == 1))
    if np.all(cond_theta(phis, hs) == 1) and not condition:
        raise TheoremViolation("h-condition holds but the duals do not sum to 1")
    return tuple(certs), condition


def build_h1(field: Field, shift: int) -> BooleanFunction:
    """h with h(y) = h(y + shift) + 1: 0 on the smaller index of each coset."""
    if shift == 0:
        raise ZeroShift("shift 0 makes h(y) = h(y) + 1 unsatisfiable")
    F = field
    ys = F.elements()
    partner = F.add(ys, shift)
    return BooleanFunction(F.n, (ys > partner).astype(np.uint8))


def extension(f1: BooleanFunction, f2: BooleanFunction, f3: BooleanFunction) -> BooleanFunction:
    """F(X, y1, y2) = f1(X) + y1 (f1 + f3)(X) + y2 (f1 + f2)(X); X is the low block."""
    a, b, c = f1.truth, f1.truth ^ f3.truth, f1.truth ^ f2.truth
    return BooleanFunction(f1.m + 2, np.concatenate([a, a ^ b, a ^ c, a ^ b ^ c]))


def extend_bent(c1: BentCertificate, c2: BentCertificate, c3: BentCertificate,
                check: bool = True) -> BentCertificate:
    """Bent function on m + 2 variables from a quadruple whose duals sum to 1.

    With ``check=False`` the preconditions are skipped and the extension is
    handed straight to the spectral check (NotBent if it fails).
    """
    f1, f2, f3 = c1.function, c2.function, c3.function
    if check:
        f4 = f1 ^ f2 ^ f3
        try:
            duals = [dual_of(fn) for fn in (f1, f2, f3, f4)]
        except NotBent:
            raise PreconditionFailed("f1 + f2 + f3 is not bent") from None
        # the sum of duals is 1 for one symmetric pairing iff it is for any other
        if not np.all((duals[0].truth ^ duals[1].truth ^ duals[2].truth ^ duals[3].truth) == 1):
            raise PreconditionFailed("the four duals do not sum to 1")
    return certify_bent(extension(f1, f2, f3))


# --- zero translators and the trace family ------------------------------------------------

def bent_selfdual_zero_translators(gammas, g: FunctionTable, f: FunctionTable) -> BentCertificate:
    """Self-dual bent H from three involutions x + gamma_j g(f(x)).

    Self-duality is with respect to the swapped pairing Tr(ay) + Tr(bx);
    under the plain trace pairing the dual is H with x and y exchanged.
    """
    F = f.field
    _binary(F)
    g1, g2, g3 = (int(x) for x in gammas)
    if F.add(F.add(g1, g2), g3) == 0:
        raise TranslatorPreconditionFailed("gamma1 + gamma2 + gamma3 = 0")
    invs = [involution_from_zero_translator(TranslatorWitness(gm, 0, 0), g, f)
            for gm in (g1, g2, g3)]
    cert = bent_from_triple(*invs, pairing="swapped")
    if cert.dual != cert.function:
        raise NotSelfDual("dual differs from the function")
    return cert


def bent_trace_family(L: LinearizedMap, beta: int, g: FunctionTable, gammas,
                      k: int) -> tuple[BentCertificate, BooleanFunction, str]:
    """Bent H from F_j(x) = L(x) + L(gamma_j) g(T^n_k(beta x)).

    Returns the certificate, the closed-form dual, and which inverse form
    composed to the identity ("gamma" or the printed "L(gamma)").
    """
    F = L.field
    _binary(F)
    g1, g2, g3 = (int(x) for x in gammas)
    if len({g1, g2, g3}) < 3 or 0 in (g1, g2, g3):
        raise TraceConditionFailed("gammas must be nonzero and pairwise distinct")
    total = F.add(F.add(g1, g2), g3)
    if total == 0:
        raise TraceConditionFailed("gamma1 + gamma2 + gamma3 = 0")
    for gm in (g1, g2, g3, total):
        if F.trace(F.mul(gm, beta), k) != 0:
            raise TraceConditionFailed(f"T^n_k(gamma beta) != 0 for gamma={gm}")
    if g.domain_k != k:
        raise ValueError(f"g must be defined on GF(2^{k})")

    xs = F.elements()
    Lx = L.table
    Linv = linmap_invert(L).values
    gt = g(F.trace(F.mul(beta, xs), k))           # g(T(beta x))
    gt_inv = gt[Linv]                              # g(T(beta L^-1(x)))
    phis, form = [], None
    for gm in (g1, g2, g3):
        phi = F.add(Lx, F.mul(int(Lx[gm]), gt))
        candidates = {"gamma": F.add(Linv, F.mul(gm, gt_inv)),
                      "L(gamma)": F.add(Linv, F.mul(int(Lx[gm]), gt_inv))}
        good = [name for name, inv in candidates.items()
                if np.array_equal(phi[inv], xs) and np.array_equal(inv[phi], xs)]
        if not good:
            raise InverseMismatch(f"no closed-form inverse composes to identity for gamma={gm}")
        form = good[0] if form is None or form not in good else form
        phis.append(PermTable(F, phi, certified=True))

    cert = bent_from_triple(*phis)
    X, Y = _xy(F)
    coef = {"gamma": lambda gm: gm, "L(gamma)": lambda gm: int(Lx[gm])}[form]
    dual_cf = _tr_grid(F, Y, Linv[X]) ^ _maj(
        *[_tr_grid(F, F.mul(coef(gm), Y), gt_inv[X]) for gm in (g1, g2, g3)])
    dual_cf = _bf(F, dual_cf)
    if cert.dual != dual_cf:
        raise DualMismatch("spectral dual differs from the closed form")
    explicit = _tr_grid(F, X, Lx[Y]) ^ _maj(
        *[_tr_grid(F, F.mul(int(Lx[gm]), X), gt[Y]) for gm in (g1, g2, g3)])
    if not np.array_equal(explicit.reshape(-1), cert.function.truth):
        raise InternalInconsistency("explicit H differs from the majority construction")
    return cert, dual_cf, form
