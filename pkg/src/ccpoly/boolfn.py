"""Total Boolean functions g: {0,1}^n -> {0,1} stored as truth tables.

Input convention: the table index of an input x = (x_1, ..., x_n) is
sum(x_i * 2**(i-1)), i.e. x_1 is the least-significant bit.  Variables are
always numbered from 1; index 0 is rejected everywhere.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

MAX_ARITY = 16


class SpecError(ValueError):
    """Malformed function or problem spec; ``token`` names the offending part."""

    def __init__(self, message: str, token: str):
        super().__init__(f"{message}: {token!r}")
        self.token = token


@dataclass(frozen=True)
class BooleanFunction:
    n: int
    table: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_ARITY:
            raise ValueError(f"arity {self.n} outside 0..{MAX_ARITY}")
        table = tuple(int(b) for b in self.table)
        if len(table) != 1 << self.n:
            raise ValueError(f"table length {len(table)} != 2**{self.n}")
        if any(b not in (0, 1) for b in table):
            raise ValueError("table entries must be 0 or 1")
        object.__setattr__(self, "table", table)

    @classmethod
    def from_callable(cls, n: int, fn: Callable[[tuple[int, ...]], int]) -> "BooleanFunction":
        """Build from ``fn(bits)`` where bits = (x_1, ..., x_n)."""
        return cls(n, tuple(int(bool(fn(index_to_bits(x, n)))) for x in range(1 << n)))

    @classmethod
    def from_int(cls, n: int, value: int) -> "BooleanFunction":
        """Table bit i is bit i of ``value``."""
        if value < 0 or value >> (1 << n):
            raise ValueError(f"value does not fit a table of 2**{n} bits")
        return cls(n, tuple((value >> i) & 1 for i in range(1 << n)))

    @classmethod
    def constant(cls, n: int, value: int) -> "BooleanFunction":
        return cls(n, (int(value),) * (1 << n))

    def __call__(self, x: int | Sequence[int]) -> int:
        return self.evaluate(x)

    def evaluate(self, x: int | Sequence[int]) -> int:
        if isinstance(x, int):
            return self.table[x]
        return self.table[bits_to_index(x, self.n)]

    def to_int(self) -> int:
        return sum(b << i for i, b in enumerate(self.table))

    def complement(self) -> "BooleanFunction":
        return BooleanFunction(self.n, tuple(1 - b for b in self.table))

    def ones(self) -> int:
        return sum(self.table)

    def is_constant(self) -> bool:
        return len(set(self.table)) == 1

    def permute(self, perm: Sequence[int]) -> "BooleanFunction":
        """g o pi: the new function reads variable perm[i] (0-based) at position i."""
        n = self.n
        out = []
        for x in range(1 << n):
            y = 0
            for i in range(n):
                if (x >> i) & 1:
                    y |= 1 << perm[i]
            out.append(self.table[y])
        return BooleanFunction(n, tuple(out))


@dataclass(frozen=True)
class SymmetricProfile:
    """Values v_0..v_n of a symmetric g, with t the least k > 0 where v_k = 1."""

    values: tuple[int, ...]
    t: int | None

    @property
    def n(self) -> int:
        return len(self.values) - 1

    @classmethod
    def from_values(cls, values: Iterable[int]) -> "SymmetricProfile":
        values = tuple(int(v) for v in values)
        if not values or any(v not in (0, 1) for v in values):
            raise ValueError("profile values must be a non-empty 0/1 sequence")
        t = next((k for k in range(1, len(values)) if values[k] == 1), None)
        return cls(values, t)

    def to_function(self) -> BooleanFunction:
        n = self.n
        return BooleanFunction(n, tuple(self.values[x.bit_count()] for x in range(1 << n)))


def index_to_bits(x: int, n: int) -> tuple[int, ...]:
    return tuple((x >> i) & 1 for i in range(n))


def bits_to_index(bits: Sequence[int], n: int | None = None) -> int:
    if n is not None and len(bits) != n:
        raise ValueError(f"expected {n} bits, got {len(bits)}")
    x = 0
    for i, b in enumerate(bits):
        if b not in (0, 1):
            raise ValueError(f"bit value {b!r} is not 0/1")
        x |= b << i
    return x


# ---------------------------------------------------------------------------
# named families
# ---------------------------------------------------------------------------

def _andor(n: int) -> Callable[[int], int]:
    k = math.isqrt(n)
    if k * k != n:
        raise ValueError(f"AND-OR tree needs a perfect-square arity, got n={n}")
    block = (1 << k) - 1
    return lambda x: int(all((x >> (j * k)) & block for j in range(k)))


_WEIGHT_FAMILIES: dict[str, Callable[[int, int, dict], int]] = {
    "and": lambda w, n, p: int(w == n),
    "or": lambda w, n, p: int(w > 0),
    "nand": lambda w, n, p: int(w < n),
    "nor": lambda w, n, p: int(w == 0),
    "xor": lambda w, n, p: w & 1,
    "maj": lambda w, n, p: int(2 * w > n),
    "thr": lambda w, n, p: int(w >= p["t"]),
    "exact": lambda w, n, p: int(w == p["t"]),
    "nae": lambda w, n, p: int(0 < w < n),
    "sym": lambda w, n, p: p["v"][w],
}

_ALIASES = {"parity": "xor", "ip": "xor", "geq": "thr", "threshold": "thr", "andor": "andor",
            "and-or": "andor", "majority": "maj"}

FAMILIES = tuple(sorted(set(_WEIGHT_FAMILIES) | {"andor"}))


def _canonical_family(name: str) -> str:
    key = name.lower()
    key = _ALIASES.get(key, key)
    if key not in _WEIGHT_FAMILIES and key != "andor":
        raise ValueError(f"unknown family {name!r}")
    return key


def _check_params(key: str, n: int, params: dict) -> dict:
    params = dict(params)
    if key in ("thr", "exact"):
        if "t" not in params:
            raise ValueError(f"family {key!r} needs parameter t")
        t = int(params["t"])
        if not 0 <= t <= n + 1:
            raise ValueError(f"threshold t={t} outside 0..{n + 1}")
        params["t"] = t
    if key == "sym":
        v = params.get("v")
        if v is None:
            raise ValueError("family 'sym' needs parameter v (profile bits v_0..v_n)")
        v = tuple(int(c) for c in v)
        if len(v) != n + 1 or any(b not in (0, 1) for b in v):
            raise ValueError(f"profile {params['v']!r} must be n+1={n + 1} bits")
        params["v"] = v
    return params


def named_family(name: str, n: int, **params) -> BooleanFunction:
    """Truth table of a named family: and, or, nand, nor, xor (parity, ip), maj,
    thr (geq; needs t), exact (needs t), nae, sym (needs v), andor."""
    key = _canonical_family(name)
    if not 1 <= n <= MAX_ARITY:
        raise ValueError(f"arity {n} outside 1..{MAX_ARITY}")
    params = _check_params(key, n, params)
    if key == "andor":
        fn = _andor(n)
        return BooleanFunction(n, tuple(fn(x) for x in range(1 << n)))
    rule = _WEIGHT_FAMILIES[key]
    by_weight = [rule(w, n, params) for w in range(n + 1)]
    return BooleanFunction(n, tuple(by_weight[x.bit_count()] for x in range(1 << n)))


def family_profile(name: str, n: int, **params) -> SymmetricProfile:
    """Symmetric profile of a weight-based family, for any arity (no table)."""
    key = _canonical_family(name)
    if key == "andor":
        raise ValueError("the AND-OR tree is not symmetric")
    if n < 1:
        raise ValueError("arity must be positive")
    params = _check_params(key, n, params)
    rule = _WEIGHT_FAMILIES[key]
    return SymmetricProfile.from_values(rule(w, n, params) for w in range(n + 1))


# ---------------------------------------------------------------------------
# structural predicates and restrictions
# ---------------------------------------------------------------------------

def is_symmetric(g: BooleanFunction) -> SymmetricProfile | None:
    values: list[int | None] = [None] * (g.n + 1)
    for x, b in enumerate(g.table):
        w = x.bit_count()
        if values[w] is None:
            values[w] = b
        elif values[w] != b:
            return None
    return SymmetricProfile.from_values(values)  # type: ignore[arg-type]


def is_monotone(g: BooleanFunction) -> bool:
    # checking single-bit flips suffices
    t = g.table
    for i in range(g.n):
        bit = 1 << i
        for x in range(1 << g.n):
            if not x & bit and t[x] > t[x | bit]:
                return False
    return True


def _check_var(i: int, n: int) -> int:
    if not 1 <= i <= n:
        raise ValueError(f"variable index {i} outside 1..{n}")
    return i - 1


def restrict(g: BooleanFunction, assignment: Mapping[int, int]) -> BooleanFunction:
    """Fix the given variables; the free ones keep their order and are renumbered."""
    fixed = 0
    value = 0
    for var, b in assignment.items():
        i = _check_var(var, g.n)
        if b not in (0, 1):
            raise ValueError(f"assigned value {b!r} is not 0/1")
        fixed |= 1 << i
        value |= b << i
    free = [i for i in range(g.n) if not fixed >> i & 1]
    m = len(free)
    out = []
    for y in range(1 << m):
        x = value
        for j, i in enumerate(free):
            if y >> j & 1:
                x |= 1 << i
        out.append(g.table[x])
    return BooleanFunction(m, tuple(out))


def restrict_by_blocks(g: BooleanFunction, z: int | Sequence[int],
                       blocks: Sequence[Iterable[int]]) -> BooleanFunction:
    """h(y_1..y_b): every x_j with j in S_i reads y_i, all other x_j equal z_j."""
    base = z if isinstance(z, int) else bits_to_index(z, g.n)
    if not 0 <= base < 1 << g.n:
        raise ValueError("base input out of range")
    masks = []
    seen = 0
    for block in blocks:
        mask = 0
        for var in block:
            mask |= 1 << _check_var(var, g.n)
        if not mask:
            raise ValueError("empty block")
        if mask & seen:
            raise ValueError("blocks overlap")
        if mask & base:
            raise ValueError("block touches a position where z is 1")
        seen |= mask
        masks.append(mask)
    b = len(masks)
    out = []
    for y in range(1 << b):
        x = base
        for i, mask in enumerate(masks):
            if y >> i & 1:
                x |= mask
        out.append(g.table[x])
    return BooleanFunction(b, tuple(out))


def minimal_true_points(g: BooleanFunction) -> list[int]:
    """Inputs x with g(x)=1 such that no proper submask is also a 1-input."""
    t = g.table
    out = []
    for x in range(1 << g.n):
        if t[x] and all(not t[x & ~(1 << i)] for i in range(g.n) if x >> i & 1):
            out.append(x)
    return out


# ---------------------------------------------------------------------------
# function-spec mini-language
# ---------------------------------------------------------------------------

_INT_RE = re.compile(r"[0-9]+")


def _parse_kv(parts: Sequence[str], spec: str) -> dict[str, str]:
    out = {}
    for part in parts:
        if "=" not in part:
            raise SpecError("expected key=value", part)
        key, val = part.split("=", 1)
        key = key.strip()
        if not key or key in out:
            raise SpecError("bad or repeated key", part)
        out[key] = val.strip()
    return out


def _parse_int(kv: dict[str, str], key: str, spec: str) -> int:
    if key not in kv:
        raise SpecError(f"missing {key}=", spec)
    if not _INT_RE.fullmatch(kv[key]):
        raise SpecError("not a non-negative integer", f"{key}={kv[key]}")
    return int(kv[key])


def parse_function_spec(spec: str) -> BooleanFunction:
    """Parse ``name:OR,n=4``, ``name:thr,n=5,t=3``, ``name:sym,n=3,v=0110`` or ``tt:<hex>,n=3``.

    Hex tables are read as a number whose bit i is table entry i, so
    ``tt:0x8,n=2`` is AND on two variables.
    """
    spec = spec.strip()
    head, sep, rest = spec.partition(":")
    if not sep:
        raise SpecError("expected 'name:' or 'tt:' prefix", spec)
    parts = [p for p in rest.split(",")]
    if not parts or not parts[0].strip():
        raise SpecError("missing function body", spec)
    body, kv = parts[0].strip(), _parse_kv(parts[1:], spec)
    n = _parse_int(kv, "n", spec)
    if not 1 <= n <= MAX_ARITY:
        raise SpecError(f"arity outside 1..{MAX_ARITY}", f"n={kv['n']}")
    if head == "tt":
        digits = body[2:] if body.lower().startswith("0x") else body
        if not digits or not re.fullmatch(r"[0-9a-fA-F]+", digits):
            raise SpecError("bad hex table", body)
        value = int(digits, 16)
        if value >> (1 << n):
            raise SpecError(f"hex table wider than 2**{n} bits", body)
        extra = set(kv) - {"n"}
        if extra:
            raise SpecError("unexpected parameter", sorted(extra)[0])
        return BooleanFunction.from_int(n, value)
    if head != "name":
        raise SpecError("unknown spec kind", head)
    try:
        key = _canonical_family(body)
    except ValueError:
        raise SpecError("unknown family", body) from None
    params: dict = {}
    for k, v in kv.items():
        if k == "n":
            continue
        if k == "t":
            params["t"] = _parse_int(kv, "t", spec)
        elif k == "v" and key == "sym":
            if not re.fullmatch(r"[01]+", v):
                raise SpecError("profile must be a 0/1 string", f"v={v}")
            params["v"] = v
        else:
            raise SpecError("unexpected parameter", f"{k}={v}")
    try:
        return named_family(key, n, **params)
    except ValueError as exc:
        raise SpecError(str(exc), spec) from None
