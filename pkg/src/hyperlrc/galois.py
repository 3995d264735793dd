"""Finite fields GF(p^e) with integer-encoded elements.

Elements are encoded as integers in ``[0, q)``: the coefficient vector of the
representing polynomial read as base-``p`` digits, lowest degree first.  The
hot paths (matrix elimination, codeword enumeration) work directly on these
integers through :class:`Field` methods; :class:`FieldElement` is the tagged
wrapper for user-facing arithmetic.
"""

from __future__ import annotations

import functools
from typing import Iterable, Sequence

import numpy as np

from .errors import FieldMismatchError, ParameterError

MAX_FIELD_BITS = 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over GF(p), coefficient lists low-to-high -------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    b = _trim(list(b))
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return a


def _poly_mulmod(a: Sequence[int], b: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _poly_mod(prod, mod, p)


def _digits(value: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        value, d = divmod(value, p)
        out.append(d)
    return out


def _undigits(coeffs: Sequence[int], p: int) -> int:
    v = 0
    for c in reversed(coeffs):
        v = v * p + c
    return v


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Exhaustive factor search: no monic divisor of degree 1..deg/2."""
    poly = _trim(list(poly))
    deg = len(poly) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    if poly[0] == 0:
        return False
    for fdeg in range(1, deg // 2 + 1):
        for low in range(p ** fdeg):
            cand = _digits(low, p, fdeg) + [1]
            if not _poly_mod(poly, cand, p):
                return False
    return True


def default_modulus(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``e`` over GF(p)."""
    for low in range(p ** e):
        cand = _digits(low, p, e) + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # unreachable


class Field:
    """GF(q) with q = p^e.  Construct through :func:`field_new`."""

    def __init__(self, p: int, e: int = 1, modulus: Sequence[int] | None = None,
                 max_bits: int = MAX_FIELD_BITS):
        if not isinstance(p, int) or not is_prime(p):
            raise ParameterError(f"characteristic {p} is not prime")
        if not isinstance(e, int) or e < 1:
            raise ParameterError(f"extension degree must be >= 1, got {e}")
        q = p ** e
        if q > 2 ** max_bits:
            raise ParameterError(f"GF({p}^{e}) exceeds the {max_bits}-bit size cap")
        if e == 1:
            if modulus:
                raise ParameterError("prime fields take no modulus")
            modulus = ()
        elif modulus is None:
            modulus = default_modulus(p, e)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != e + 1 or modulus[-1] != 1:
                raise ParameterError(f"modulus must be monic of degree {e}")
            if not is_irreducible(modulus, p):
                raise ParameterError(f"modulus {list(modulus)} is reducible over GF({p})")
        self.p = p
        self.e = e
        self.q = q
        self.modulus = tuple(modulus)
        if e == 1:
            self._init_prime()
        else:
            self._init_extension()

    # -- setup --------------------------------------------------------------

    def _init_prime(self):
        p = self.p
        self.add = lambda a, b: (a + b) % p
        self.sub = lambda a, b: (a - b) % p
        self.neg = lambda a: (-a) % p
        self.mul = lambda a, b: (a * b) % p

    def _init_extension(self):
        p, e, q = self.p, self.e, self.q
        mod = list(self.modulus)
        order = q - 1
        exp = None
        for g in range(2, q):
            gpoly = _digits(g, p, e)
            table = [1]
            cur = [1]
            for _ in range(order - 1):
                cur = _poly_mulmod(cur, gpoly, mod, p)
                v = _undigits(cur, p)
                if v == 1:
                    break
                table.append(v)
            if len(table) == order:
                exp = table
                break
        assert exp is not None
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        self._exp = exp + exp  # doubled so log sums need no reduction
        self._log = log
        self.generator = exp[1] if order > 1 else 1

        if p == 2:
            self.add = self.sub = lambda a, b: a ^ b
            self.neg = lambda a: a
        else:
            neg = [_undigits([(-d) % p for d in _digits(v, p, e)], p) for v in range(q)]
            # zech[n] = log(1 + g^n), or -1 when 1 + g^n = 0
            zech = []
            for v in exp:
                s = _undigits([(x + y) % p for x, y in zip(_digits(v, p, e), _digits(1, p, e))], p)
                zech.append(log[s] if s else -1)
            exp2 = self._exp

            def add(a, b):
                if a == 0:
                    return b
                if b == 0:
                    return a
                la = log[a]
                z = zech[(log[b] - la) % order]
                if z < 0:
                    return 0
                return exp2[la + z]

            self.add = add
            self.neg = neg.__getitem__
            self.sub = lambda a, b: add(a, neg[b])
            self._neg_table = neg

        exp2 = self._exp

        def mul(a, b):
            if a == 0 or b == 0:
                return 0
            return exp2[log[a] + log[b]]

        self.mul = mul

    # -- scalar ops on integer encodings ------------------------------------

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        """``a**k`` with the convention ``0**0 == 1``."""
        if k == 0:
            return 1
        if k < 0:
            a, k = self.inv(a), -k
        if a == 0:
            return 0
        if self.e == 1:
            return pow(a, k, self.p)
        return self._exp[(self._log[a] * k) % (self.q - 1)]

    # -- vectorised ops for numpy int arrays --------------------------------

    def np_add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.int64)
        scale = 1
        for _ in range(self.e):
            da = (a // scale) % self.p
            db = (b // scale) % self.p
            out += ((da + db) % self.p) * scale
            scale *= self.p
        return out

    def np_mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.e == 1:
            return (a * b) % self.p
        if not hasattr(self, "_np_tables"):
            self._np_tables = (np.asarray(self._exp, dtype=np.int64),
                               np.asarray(self._log, dtype=np.int64))
        exp, log = self._np_tables
        out = exp[log[a] + log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    # -- elements -----------------------------------------------------------

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            self._check(value)
            return value
        value = int(value)
        if not 0 <= value < self.q:
            raise ParameterError(f"{value} is not an element encoding of GF({self.q})")
        return FieldElement(self, value)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, v) for v in range(self.q)]

    def _check(self, x: "FieldElement"):
        if x.field != self:
            raise FieldMismatchError(f"element of {x.field} used in {self}")

    def descriptor(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Field):
            return NotImplemented
        return (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e})"


class FieldElement:
    """An element tagged with its field.  Mixed-field arithmetic raises."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: int):
        self.field = field
        self.value = value

    def _other(self, other) -> int:
        if not isinstance(other, FieldElement):
            raise FieldMismatchError(f"cannot combine {self.field} element with {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError(f"cannot combine elements of {self.field} and {other.field}")
        return other.value

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.pow(self.value, int(k)))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.field}({self.value})"


@functools.lru_cache(maxsize=None)
def _cached_field(p, e, modulus, max_bits):
    return Field(p, e, modulus, max_bits)


def field_new(p: int, e: int = 1, modulus: Sequence[int] | None = None,
              max_bits: int = MAX_FIELD_BITS) -> Field:
    """Return GF(p^e), certifying the modulus (or choosing the default one)."""
    key = None if modulus is None else tuple(int(c) for c in modulus)
    if not isinstance(p, int) or not isinstance(e, int):
        raise ParameterError("p and e must be integers")
    return _cached_field(p, e, key, max_bits)


def field_from_descriptor(desc: dict) -> Field:
    modulus = desc.get("modulus") or None
    return field_new(int(desc["p"]), int(desc.get("e", 1)), modulus)


def parse_field_spec(text: str, modulus: Sequence[int] | None = None) -> Field:
    """Parse ``"p"`` or ``"p^e"`` (as used by the command line)."""
    if "^" in text:
        p, e = text.split("^", 1)
        return field_new(int(p), int(e), modulus)
    return field_new(int(text), 1, modulus)


def arith(f: Field, op: str, a: FieldElement, b=None) -> FieldElement:
    """Dispatch one of add/sub/mul/div/inv/pow on field elements."""
    a = f(a) if isinstance(a, FieldElement) else _reject(a)
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** int(b)
    if not isinstance(b, FieldElement):
        _reject(b)
    b = f(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ParameterError(f"unknown operation {op!r}")


def _reject(x):
    raise FieldMismatchError(f"expected a FieldElement, got {type(x).__name__}")


# -- polynomials over GF(q) ---------------------------------------------------

def eval_poly(f: Field, coeffs: Sequence[int], x: int) -> int:
    """Horner evaluation on integer encodings, coefficients low-to-high."""
    acc = 0
    for c in reversed(coeffs):
        acc = f.add(f.mul(acc, x), c)
    return acc


def poly_eval(f: Field, coeffs: Sequence[FieldElement], x: FieldElement) -> FieldElement:
    if not coeffs:
        raise ParameterError("polynomial needs at least one coefficient")
    for c in coeffs:
        f._check(c)
    f._check(x)
    return FieldElement(f, eval_poly(f, [c.value for c in coeffs], x.value))


def poly_from_roots(f: Field, roots: Iterable[int]) -> list[int]:
    """Coefficients (low-to-high) of prod (x - g); the empty product is ``[1]``."""
    coeffs = [1]
    for g in roots:
        ng = f.neg(g)
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] = f.add(nxt[i + 1], c)
            nxt[i] = f.add(nxt[i], f.mul(c, ng))
        coeffs = nxt
    return coeffs
