"""Text formats: field specs, elements, function tables, Boolean functions.

Elements are written either as coefficient lists, most significant first
(``1,0,1`` is X^2 + 1), or as powers of the primitive element (``a^7``).
A bare ``0`` is the zero element.  Lists of elements use ``;`` as the
separator; plain commas are also accepted when every item is ``a^<e>`` or
``0``.
"""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np

from .bent import BooleanFunction
from .errors import ParseError
from .field import Field
from .translators import FunctionTable


def _ints(text: str, what: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t != ""]
    except ValueError:
        raise ParseError(f"bad {what}: {text!r}") from None


# --- fields ----------------------------------------------------------------------

def parse_field_text(text: str) -> Field:
    """Parse ``p=..``/``n=..``/``modulus=..``/``alpha=..`` lines."""
    data: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"expected key=value, got {raw!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        data[key] = val
    try:
        p, n = int(data["p"]), int(data["n"])
    except (KeyError, ValueError):
        raise ParseError("field spec needs integer p and n") from None
    modulus = data.get("modulus", "auto")
    modulus = "auto" if modulus.lower() == "auto" else _ints(modulus, "modulus")
    alpha = data.get("alpha")
    alpha = None if alpha is None else _ints(alpha, "alpha")
    return Field(p, n, modulus=modulus, alpha=alpha)


def parse_field_inline(text: str) -> Field:
    """``p,n`` or ``p,n,auto`` or ``p,n,c_n,...,c_0``."""
    parts = [t.strip() for t in text.split(",")]
    if len(parts) < 2:
        raise ParseError(f"inline field spec needs at least p,n: {text!r}")
    try:
        p, n = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"bad inline field spec {text!r}") from None
    rest = parts[2:]
    if not rest or rest == ["auto"]:
        return Field(p, n)
    return Field(p, n, modulus=_ints(",".join(rest), "modulus"))


def load_field(spec: str) -> Field:
    """A path to a spec file, or an inline ``p,n[,modulus]`` string."""
    if os.path.isfile(spec):
        return parse_field_text(Path(spec).read_text())
    return parse_field_inline(spec)


def format_field(field: Field) -> str:
    coeffs = ",".join(str(c) for c in reversed(field.coeffs(field.alpha)))
    return (f"p={field.p}\nn={field.n}\nmodulus={','.join(map(str, field.modulus))}\n"
            f"alpha={coeffs}\n")


# --- elements --------------------------------------------------------------------

def parse_element(field: Field, text: str) -> int:
    t = text.strip().replace(" ", "")
    if t.startswith(("a^", "w^")):
        try:
            return field.exp_of(int(t[2:]))
        except ValueError:
            raise ParseError(f"bad exponent in {text!r}") from None
    coeffs = _ints(t, "element")
    if not coeffs or len(coeffs) > field.n or any(not 0 <= c < field.p for c in coeffs):
        raise ParseError(f"{text!r} is not an element of GF({field.p}^{field.n})")
    low = coeffs[::-1]
    return field.from_coeffs(low + [0] * (field.n - len(low)))


def parse_element_list(field: Field, text: str) -> list[int]:
    if ";" in text:
        items = text.split(";")
    else:
        items = text.split(",")
        if not all(i.strip().startswith(("a^", "w^")) or i.strip() == "0" for i in items):
            raise ParseError("separate coefficient-form elements with ';'")
    return [parse_element(field, i) for i in items if i.strip()]


def format_element(field: Field, x: int) -> str:
    return field.format(int(x))


def format_exp(field: Field, x: int) -> str:
    """``a^<e>`` form, or ``0``."""
    return "0" if int(x) == 0 else f"a^{field.discrete_log(int(x))}"


# --- function tables ---------------------------------------------------------------

def format_table(table: FunctionTable) -> str:
    F = table.field
    lines = [f"field={F.p}^{F.n} codomain={table.codomain_k}"]
    if not table.on_whole_field:
        lines[0] += f" domain={table.domain_k}"
    lines += [f"{F.format(int(x))} -> {F.format(int(v))}"
              for x, v in zip(table.domain, table.values)]
    return "\n".join(lines) + "\n"


def parse_table(field: Field, text: str) -> FunctionTable:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty table")
    header = dict(tok.split("=", 1) for tok in lines[0].split() if "=" in tok)
    try:
        p, n = (int(v) for v in header["field"].split("^"))
        k = int(header["codomain"])
    except (KeyError, ValueError):
        raise ParseError(f"bad table header {lines[0]!r}") from None
    if (p, n) != (field.p, field.n):
        raise ParseError(f"table is over GF({p}^{n}), field is GF({field.p}^{field.n})")
    body = lines[1:]
    domain_k = int(header.get("domain", n))
    if len(body) != p ** domain_k:
        raise ParseError(f"expected {p ** domain_k} rows, got {len(body)}")
    values = np.zeros(p ** domain_k, dtype=np.int64)
    seen = np.zeros(p ** domain_k, dtype=bool)
    pos = field.subfield(domain_k).position
    for row in body:
        if "->" not in row:
            raise ParseError(f"bad row {row!r}")
        lhs, rhs = row.split("->", 1)
        x = pos[parse_element(field, lhs)]
        if x < 0:
            raise ParseError(f"{lhs.strip()} is outside the table's domain")
        values[x] = parse_element(field, rhs)
        seen[x] = True
    if not seen.all():
        raise ParseError("table rows do not cover the domain")
    return FunctionTable(field, k, values, domain_k)


def load_table(field: Field, path: str) -> FunctionTable:
    return parse_table(field, Path(path).read_text())


# --- Boolean functions ---------------------------------------------------------------

def format_boolean(f: BooleanFunction) -> str:
    """``m=<m>`` then rows of up to 64 bits as hex, bit j of a row = f(row*64 + j)."""
    lines = [f"m={f.m}"]
    bits = f.truth
    for start in range(0, len(bits), 64):
        chunk = bits[start:start + 64]
        word = int(np.dot(chunk.astype(object), [1 << j for j in range(len(chunk))]))
        lines.append(f"{word:0{(len(chunk) + 3) // 4}x}")
    return "\n".join(lines) + "\n"


def parse_boolean(text: str) -> BooleanFunction:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or not lines[0].startswith("m="):
        raise ParseError("Boolean function file must start with m=<int>")
    try:
        m = int(lines[0][2:])
        words = [int(w, 16) for w in lines[1:]]
    except ValueError:
        raise ParseError("bad Boolean function file") from None
    size = 1 << m
    width = min(64, size)
    if len(words) != (size + 63) // 64:
        raise ParseError(f"expected {(size + 63) // 64} hex rows, got {len(words)}")
    truth = np.array([(w >> j) & 1 for w in words for j in range(width)], dtype=np.uint8)
    return BooleanFunction(m, truth)


def load_boolean(path: str) -> BooleanFunction:
    return parse_boolean(Path(path).read_text())
