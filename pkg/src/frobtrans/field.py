"""Exact arithmetic in GF(p^n).

Elements are plain integers: the element c_0 + c_1 X + ... + c_{n-1} X^{n-1}
is stored as the base-p number c_0 + c_1 p + ... + c_{n-1} p^{n-1}.  That
integer is also the element's position in the canonical enumeration, so a
function on the field is just an array of length p^n.

Every operation accepts either Python ints or integer numpy arrays and
returns the same kind.  Multiplication goes through log/antilog tables that
are built eagerly when the field is constructed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import (
    DegreeMismatch,
    DivisionByZero,
    FieldTooLarge,
    LogOfZero,
    MixedFields,
    NonDivisorK,
    NonPrimeP,
    NotPrimitive,
    ReducibleModulus,
)

MAX_ORDER = 1 << 20


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


# --- dense polynomials over GF(p), coefficient lists low -> high -----------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for j, mc in enumerate(m):
            a[shift + j] = (a[shift + j] - c * mc) % p
        _trim(a)
    return a


def _pmulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _pmod(out, m, p)


def _ppowmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(list(a), m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _trim([c % p for c in out])


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Rabin's test; ``modulus`` is monic, most significant coefficient first."""
    m = [c % p for c in reversed(modulus)]
    n = len(m) - 1
    if n == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p ** n, m, p), x, p):
        return False
    for r in prime_factors(n):
        h = _psub(_ppowmod(x, p ** (n // r), m, p), x, p)
        if len(_pgcd(m, h, p)) != 1:
            return False
    return True


def _x_is_primitive(modulus: Sequence[int], p: int) -> bool:
    m = [c % p for c in reversed(modulus)]
    n = len(m) - 1
    order = p ** n - 1
    x = _pmod([0, 1], m, p)
    if _ppowmod(x, order, m, p) != [1]:
        return False
    return all(_ppowmod(x, order // r, m, p) != [1] for r in prime_factors(order))


def _monic_candidates(p: int, n: int):
    # ordered by the canonical index of the lower coefficients
    for low in range(p ** n):
        digits = [(low // p ** j) % p for j in range(n)]
        yield tuple([1] + digits[::-1])


def find_modulus(p: int, n: int) -> tuple[tuple[int, ...], bool]:
    """Smallest monic irreducible with X primitive, else smallest irreducible.

    Returns the modulus (most significant first) and whether X is primitive.
    """
    first_irreducible = None
    for cand in _monic_candidates(p, n):
        if not is_irreducible(cand, p):
            continue
        if first_irreducible is None:
            first_irreducible = cand
        if _x_is_primitive(cand, p):
            return cand, True
    return first_irreducible, False


def format_poly(modulus: Sequence[int]) -> str:
    n = len(modulus) - 1
    terms = []
    for j, c in enumerate(modulus):
        e = n - j
        if c == 0:
            continue
        if e == 0:
            terms.append(str(c))
        else:
            mono = "X" if e == 1 else f"X^{e}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms)


@dataclass(frozen=True)
class SubfieldView:
    """GF(p^k) sitting inside GF(p^n) as the fixed points of x -> x^(p^k)."""

    field: Field
    k: int
    elements: np.ndarray       # sorted canonical indices, length p^k
    position: np.ndarray       # position[x] = index into elements, or -1

    @property
    def size(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return bool(self.position[int(x)] >= 0)

    def contains_all(self, xs) -> bool:
        return bool(np.all(self.position[np.asarray(xs)] >= 0))

    def nonzero(self) -> np.ndarray:
        return self.elements[self.elements != 0]

    def generator(self) -> int:
        f = self.field
        return f.exp_of((f.q - 1) // (f.p ** self.k - 1))

    def __repr__(self) -> str:
        return f"SubfieldView(GF({self.field.p}^{self.k}) in {self.field})"


class Field:
    """GF(p^n) with an explicit modulus and primitive element.

    ``modulus`` is a monic coefficient sequence, most significant first
    (``(1, 0, 0, 1, 1)`` is X^4 + X + 1), or ``None``/"auto" for the
    lexicographically smallest primitive polynomial.  ``alpha`` may be
    given as a coefficient sequence (most significant first) or an index.
    """

    def __init__(self, p: int, n: int, modulus=None, alpha=None):
        if not is_prime(p):
            raise NonPrimeP(f"p={p} is not prime")
        if n < 1:
            raise DegreeMismatch(f"extension degree must be positive, got {n}")
        if p ** n > MAX_ORDER:
            raise FieldTooLarge(f"{p}^{n} exceeds the desk-scale limit 2^20")
        self.p = p
        self.n = n
        self.q = p ** n

        x_primitive = None
        if modulus is None or (isinstance(modulus, str) and modulus.lower() == "auto"):
            modulus, x_primitive = find_modulus(p, n)
        else:
            modulus = tuple(int(c) for c in modulus)
            if len(modulus) != n + 1:
                raise DegreeMismatch(
                    f"modulus has degree {len(modulus) - 1}, expected {n}")
            if modulus[0] % p != 1:
                raise DegreeMismatch("modulus must be monic")
            if any(not 0 <= c < p for c in modulus):
                raise DegreeMismatch(f"modulus coefficients must lie in [0, {p})")
            if not is_irreducible(modulus, p):
                raise ReducibleModulus(f"{format_poly(modulus)} is reducible over GF({p})")
        self.modulus = tuple(modulus)

        self._times_x = self._build_times_x()
        if alpha is None:
            if x_primitive is None:
                x_primitive = _x_is_primitive(self.modulus, p)
            alpha = self._from_low([0, 1]) if x_primitive else self._search_primitive()
        elif not isinstance(alpha, (int, np.integer)):
            alpha = self.from_coeffs(list(alpha)[::-1])
        self.alpha = int(alpha)
        self._build_logs()
        self._frob_cache: dict[int, np.ndarray] = {}
        self._sub_cache: dict[int, SubfieldView] = {}

    # --- construction helpers ------------------------------------------

    def _from_low(self, low: Sequence[int]) -> int:
        if self.n == 1 and len(low) > 1:
            # X reduces to -c_0 in a degree-one extension
            return self._reduce_poly(low)
        return sum(int(c) * self.p ** j for j, c in enumerate(low))

    def _reduce_poly(self, low: Sequence[int]) -> int:
        m = list(reversed(self.modulus))
        r = _pmod(list(low), m, self.p)
        return sum(c * self.p ** j for j, c in enumerate(r))

    def _digits(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return np.stack([(a // self.p ** j) % self.p for j in range(self.n)], axis=-1)

    def _undigits(self, d: np.ndarray) -> np.ndarray:
        w = self.p ** np.arange(self.n, dtype=np.int64)
        return (d.astype(np.int64) * w).sum(axis=-1)

    def _build_times_x(self) -> np.ndarray:
        p, n, q = self.p, self.n, self.q
        idx = np.arange(q, dtype=np.int64)
        low = np.array(list(reversed(self.modulus[1:])), dtype=np.int64)  # c_0..c_{n-1}
        if p == 2:
            top = (idx >> (n - 1)) & 1
            mask = int(self._undigits(low[None, :])[0])
            return ((idx << 1) & (q - 1)) ^ (top * mask)
        d = self._digits(idx)
        top = d[:, n - 1]
        shifted = np.concatenate([np.zeros((q, 1), dtype=np.int64), d[:, : n - 1]], axis=1)
        return self._undigits((shifted - top[:, None] * low[None, :]) % p)

    def _mul_by_table(self, c: int) -> np.ndarray:
        """Table of x -> c*x computed by schoolbook polynomial multiplication."""
        cd = [(c // self.p ** j) % self.p for j in range(self.n)]
        acc = np.zeros(self.q, dtype=np.int64)
        xj = np.arange(self.q, dtype=np.int64)
        for coef in cd:
            for _ in range(coef):
                acc = self.add(acc, xj)
            xj = self._times_x[xj]
        return acc

    def _cycle_from(self, step: np.ndarray) -> list[int]:
        step_l = step.tolist()
        seq = [1]
        a = step_l[1]
        while a != 1 and len(seq) < self.q:
            seq.append(a)
            a = step_l[a]
        return seq

    def _search_primitive(self) -> int:
        for c in range(2, self.q):
            if len(self._cycle_from(self._mul_by_table(c))) == self.q - 1:
                return c
        return 1  # GF(2): the only nonzero element

    def _build_logs(self) -> None:
        x_idx = self._from_low([0, 1])
        step = self._times_x if self.alpha == x_idx and self.n > 1 else self._mul_by_table(self.alpha)
        seq = self._cycle_from(step)
        if len(seq) != self.q - 1:
            raise NotPrimitive(
                f"alpha={self.format(self.alpha)} has order {len(seq)}, expected {self.q - 1}")
        self._exp = np.array(seq, dtype=np.int64)
        self._log = np.full(self.q, -1, dtype=np.int64)
        self._log[self._exp] = np.arange(self.q - 1, dtype=np.int64)
        self._log_safe = np.where(self._log < 0, 0, self._log)

    # --- identity ------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, Field) and self.p == other.p and self.n == other.n
                and self.modulus == other.modulus and self.alpha == other.alpha)

    def __hash__(self) -> int:
        return hash((self.p, self.n, self.modulus, self.alpha))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.n}) mod {format_poly(self.modulus)}"

    @property
    def modulus_str(self) -> str:
        return format_poly(self.modulus)

    # --- elements -------------------------------------------------------

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def nonzero(self) -> np.ndarray:
        return np.arange(1, self.q, dtype=np.int64)

    def coeffs(self, x: int) -> tuple[int, ...]:
        """Coordinates c_0..c_{n-1} in the basis 1, X, ..., X^{n-1}."""
        x = int(x)
        return tuple((x // self.p ** j) % self.p for j in range(self.n))

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        """Inverse of :meth:`coeffs` (lowest degree first)."""
        if len(coeffs) != self.n or any(not 0 <= c < self.p for c in coeffs):
            raise DegreeMismatch(f"need {self.n} coefficients in [0, {self.p})")
        return sum(int(c) * self.p ** j for j, c in enumerate(coeffs))

    def format(self, x: int) -> str:
        """Canonical text form: coefficients, most significant first."""
        return ",".join(str(c) for c in reversed(self.coeffs(x)))

    def element(self, x) -> FieldElement:
        return FieldElement(self, int(x))

    # --- additive structure -------------------------------------------

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        if self.n == 1:
            return (a + b) % self.p
        scalar = np.ndim(a) == 0 and np.ndim(b) == 0
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        w = 1
        for _ in range(self.n):
            out += ((a // w + b // w) % self.p) * w
            w *= self.p
        return int(out) if scalar else out

    def neg(self, a):
        if self.p == 2:
            return a
        if self.n == 1:
            return (-a) % self.p
        scalar = np.ndim(a) == 0
        a = np.asarray(a, dtype=np.int64)
        out = np.zeros(a.shape, dtype=np.int64)
        w = 1
        for _ in range(self.n):
            out += ((-(a // w)) % self.p) * w
            w *= self.p
        return int(out) if scalar else out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def smul(self, c: int, a):
        """Multiply by an integer (an element of the prime field)."""
        c %= self.p
        if c == 0:
            return a * 0
        out = a
        for _ in range(c - 1):
            out = self.add(out, a)
        return out

    # --- multiplicative structure --------------------------------------

    def mul(self, a, b):
        scalar = np.ndim(a) == 0 and np.ndim(b) == 0
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        r = self._exp[(self._log_safe[a] + self._log_safe[b]) % (self.q - 1)]
        r = np.where((a == 0) | (b == 0), 0, r)
        return int(r) if scalar else r

    def inv(self, a):
        scalar = np.ndim(a) == 0
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("0 has no inverse")
        r = self._exp[(-self._log[a]) % (self.q - 1)]
        return int(r) if scalar else r

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        """a**e for any integer e; 0**0 is 1, 0**e is 0 for e > 0."""
        e = int(e)
        scalar = np.ndim(a) == 0
        a = np.asarray(a, dtype=np.int64)
        zero = a == 0
        if e < 0 and np.any(zero):
            raise DivisionByZero("0 raised to a negative power")
        r = self._exp[(self._log_safe[a] * (e % (self.q - 1))) % (self.q - 1)]
        if e == 0:
            r = np.ones_like(a)
        else:
            r = np.where(zero, 0, r)
        return int(r) if scalar else r

    def frobenius_pow(self, a, i: int):
        """a**(p**i); only i mod n matters."""
        i %= self.n
        if i == 0:
            return a
        t = self._frob_cache.get(i)
        if t is None:
            base = self._frob_cache.get(1)
            if base is None:
                base = self.pow(self.elements(), self.p)
                self._frob_cache[1] = base
            t = base
            for _ in range(i - 1):
                t = base[t]
            self._frob_cache[i] = t
        if np.ndim(a) == 0:
            return int(t[int(a)])
        return t[np.asarray(a, dtype=np.int64)]

    def _check_divisor(self, k: int) -> None:
        if k < 1 or self.n % k:
            raise NonDivisorK(f"k={k} does not divide n={self.n}")

    def trace(self, a, k: int = 1):
        """Relative trace T^n_k(a) = sum of a^(p^(jk)) for j < n/k."""
        self._check_divisor(k)
        out = a
        for j in range(1, self.n // k):
            out = self.add(out, self.frobenius_pow(a, j * k))
        return out

    def subfield(self, k: int) -> SubfieldView:
        self._check_divisor(k)
        view = self._sub_cache.get(k)
        if view is None:
            allx = self.elements()
            els = allx[self.frobenius_pow(allx, k) == allx]
            pos = np.full(self.q, -1, dtype=np.int64)
            pos[els] = np.arange(len(els), dtype=np.int64)
            view = SubfieldView(self, k, els, pos)
            self._sub_cache[k] = view
        return view

    def in_subfield(self, a, k: int) -> bool:
        return self.subfield(k).contains_all(np.atleast_1d(a))

    def discrete_log(self, a):
        """Exponent of alpha; scalars or arrays of nonzero elements."""
        if np.ndim(a):
            a = np.asarray(a, dtype=np.int64)
            if np.any(a == 0):
                raise LogOfZero("log of 0 is undefined")
            return self._log[a]
        a = int(a)
        if a == 0:
            raise LogOfZero("log of 0 is undefined")
        return int(self._log[a])

    def exp_of(self, e):
        """alpha**e; scalars or arrays of exponents."""
        if np.ndim(e):
            return self._exp[np.asarray(e, dtype=np.int64) % (self.q - 1)]
        return int(self._exp[int(e) % (self.q - 1)])

    @cached_property
    def abs_trace_table(self) -> np.ndarray:
        """Tr(x) for every x, as 0/1 (char 2) or prime-field digits."""
        return self.trace(self.elements(), 1)

    def arith(self, kind: str, x, y=None):
        """Dispatch on an operation name; operands are ints or FieldElements."""
        fields = {v.field for v in (x, y) if isinstance(v, FieldElement)}
        if len(fields) > 1:
            raise MixedFields("operands belong to different fields")
        if fields and fields.pop() != self:
            raise MixedFields("operand does not belong to this field")
        xv = x.value if isinstance(x, FieldElement) else x
        yv = y.value if isinstance(y, FieldElement) else y
        ops = {
            "add": lambda: self.add(xv, yv),
            "sub": lambda: self.sub(xv, yv),
            "mul": lambda: self.mul(xv, yv),
            "div": lambda: self.div(xv, yv),
            "pow": lambda: self.pow(xv, yv),
            "neg": lambda: self.neg(xv),
            "inv": lambda: self.inv(xv),
        }
        if kind not in ops:
            raise ValueError(f"unknown operation {kind!r}")
        return ops[kind]()


def field_new(p: int, n: int, modulus=None, alpha=None) -> Field:
    return Field(p, n, modulus, alpha)


@dataclass(frozen=True)
class FieldElement:
    """An element bound to its field, with operator overloads."""

    field: Field
    value: int

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise MixedFields("operands belong to different fields")
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.field.smul(int(other), 1)
        return NotImplemented

    def _wrap(self, v) -> FieldElement:
        return FieldElement(self.field, int(v))

    def __add__(self, o):
        return self._wrap(self.field.add(self.value, self._other(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return self._wrap(self.field.sub(self.value, self._other(o)))

    def __rsub__(self, o):
        return self._wrap(self.field.sub(self._other(o), self.value))

    def __mul__(self, o):
        return self._wrap(self.field.mul(self.value, self._other(o)))

    __rmul__ = __mul__

    def __truediv__(self, o):
        return self._wrap(self.field.div(self.value, self._other(o)))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def inverse(self) -> FieldElement:
        return self._wrap(self.field.inv(self.value))

    def frobenius(self, i: int) -> FieldElement:
        return self._wrap(self.field.frobenius_pow(self.value, i))

    def trace(self, k: int = 1) -> FieldElement:
        return self._wrap(self.field.trace(self.value, k))

    def log(self) -> int:
        return self.field.discrete_log(self.value)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return self.field.format(self.value)
