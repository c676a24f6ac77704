"""Arithmetic in GF(q), q = p^m a prime power.

Elements are plain integers in ``range(q)``.  For extension fields the base-p
digits of the integer are the polynomial coefficients (digit i is the
coefficient of x^i), reduced modulo a fixed irreducible polynomial.  Scalar
arithmetic goes through exp/log tables; the numpy helpers at the bottom of
``FieldCtx`` apply the same arithmetic elementwise to integer arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .config import MAX_Q
from .errors import DegreeTooLarge, DivisionByZero, NoIrreducibleFound, NonPrime, RangeError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, m) with q = p**m, or raise NonPrime."""
    if q < 2:
        raise NonPrime(f"q={q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    m, rest = 0, q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise NonPrime(f"q={q} is not a prime power")
    return p, m


# -- polynomials over GF(p): coefficient tuples, lowest degree first ---------

def _poly_mod(a: list[int], mod: tuple[int, ...], p: int) -> list[int]:
    a = list(a)
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], p - 2, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % p
    return a[:dm] + [0] * max(0, dm - len(a))


def _is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    m = len(poly) - 1
    for deg in range(1, m // 2 + 1):
        for tail in product(range(p), repeat=deg):
            divisor = tuple(tail) + (1,)
            if not any(_poly_mod(list(poly), divisor, p)):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible polynomial of degree m."""
    # Iterate coefficients as an integer so the comparison starts at the
    # highest non-leading degree, which is the usual lexicographic order.
    for code in range(p**m):
        coeffs = [(code // p**i) % p for i in range(m)]
        poly = tuple(coeffs) + (1,)
        if coeffs[0] == 0:
            continue
        if _is_irreducible(poly, p):
            return poly
    raise NoIrreducibleFound(f"no irreducible polynomial of degree {m} over GF({p})")


class FieldCtx:
    """Immutable arithmetic context for GF(p^m)."""

    def __init__(self, p: int, m: int = 1):
        if not is_prime(p):
            raise NonPrime(f"p={p} is not prime")
        if m < 1:
            raise RangeError(f"extension degree must be >= 1, got {m}")
        if p**m > MAX_Q:
            raise DegreeTooLarge(f"GF({p}^{m}) exceeds MAX_Q={MAX_Q}")
        self.p = p
        self.m = m
        self.q = q = p**m
        self.modulus: tuple[int, ...] = () if m == 1 else smallest_irreducible(p, m)

        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        digits = [[(x // p**i) % p for i in range(m)] for x in range(q)]
        for a in range(q):
            for b in range(q):
                add[a, b] = sum(((digits[a][i] + digits[b][i]) % p) * p**i for i in range(m))
                mul[a, b] = self._poly_mul(digits[a], digits[b])
        self.add_table = add
        self.mul_table = mul
        self.neg_table = np.array([int(np.nonzero(add[a] == 0)[0][0]) for a in range(q)], dtype=np.int64)
        self.sub_table = add[:, self.neg_table]

        self.exp: list[int] = []
        self.log: dict[int, int] = {}
        if q > 2:
            gen = next(g for g in range(2, q) if self._order(g) == q - 1)
            x = 1
            for i in range(q - 1):
                self.exp.append(x)
                self.log[x] = i
                x = int(mul[x, gen])
        else:
            self.exp, self.log = [1], {1: 0}
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = self.exp[(-self.log[a]) % (q - 1)]
        self.inv_table = inv
        for tab in (add, mul, self.neg_table, self.sub_table, inv):
            tab.setflags(write=False)

    def _poly_mul(self, a: list[int], b: list[int]) -> int:
        p, m = self.p, self.m
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        red = _poly_mod(prod, self.modulus, p) if m > 1 else [prod[0] % p]
        return sum(c * p**i for i, c in enumerate(red))

    def _order(self, g: int) -> int:
        x, k = g, 1
        while x != 1:
            x = int(self.mul_table[x, g])
            k += 1
        return k

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __reduce__(self):
        return (field_new, (self.p, self.m))

    @property
    def is_prime_field(self) -> bool:
        return self.m == 1

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(self, value)

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    # -- scalar arithmetic on ints --------------------------------------

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.sub_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("0 has no inverse")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    # -- elementwise arithmetic on integer arrays -------------------------

    def vadd(self, a, b):
        if self.m == 1:
            return (np.asarray(a) + b) % self.p
        return self.add_table[a, b]

    def vsub(self, a, b):
        if self.m == 1:
            return (np.asarray(a) - b) % self.p
        return self.sub_table[a, b]

    def vmul(self, a, b):
        if self.m == 1:
            return (np.asarray(a) * b) % self.p
        return self.mul_table[a, b]

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Matrix product over the field; broadcasts like ``np.matmul``."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return np.matmul(a, b) % self.p
        inner = a.shape[-1]
        out = None
        for t in range(inner):
            term = self.mul_table[a[..., :, t : t + 1], b[..., t : t + 1, :]]
            out = term if out is None else self.add_table[out, term]
        return out

    def normalize_rows(self, rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Scale each row so its first nonzero entry is 1.

        Returns ``(normalized, scalar)`` with ``row = scalar * normalized``;
        zero rows come back unchanged with scalar 0.
        """
        rows = np.asarray(rows, dtype=np.int64)
        nz = rows != 0
        lead_pos = np.argmax(nz, axis=-1)
        lead = np.take_along_axis(rows, lead_pos[..., None], axis=-1)[..., 0]
        scale = self.inv_table[lead]
        return self.vmul(rows, scale[..., None]), lead


@lru_cache(maxsize=None)
def field_new(p: int, m: int = 1) -> FieldCtx:
    return FieldCtx(p, m)


def gf(q: int) -> FieldCtx:
    """Field context for the prime power q."""
    p, m = prime_power(q)
    return field_new(p, m)


@dataclass(frozen=True)
class FieldElement:
    ctx: FieldCtx
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.ctx.q:
            raise RangeError(f"{self.value} is not an element of {self.ctx}")

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx:
                raise RangeError("elements belong to different fields")
            return other.value
        return int(other) % self.ctx.q if self.ctx.m == 1 else int(other)

    def __add__(self, other):
        return FieldElement(self.ctx, self.ctx.add(self.value, self._other(other)))

    def __sub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self.value, self._other(other)))

    def __mul__(self, other):
        return FieldElement(self.ctx, self.ctx.mul(self.value, self._other(other)))

    def __truediv__(self, other):
        return FieldElement(self.ctx, self.ctx.div(self.value, self._other(other)))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.value))

    __radd__ = __add__
    __rmul__ = __mul__

    def inv(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.inv(self.value))

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value}@GF({self.ctx.q})"
