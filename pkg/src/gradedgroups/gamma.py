"""Finite generalized rings: an abelian group with a bi-additive product.

Elements are canonical integers ``0..size-1`` and every operation is a table
lookup. Tables are validated once, at construction.
"""

import json

import numpy as np


class GammaError(ValueError):
    pass


class GammaRing:
    """Abelian group ``(add, zero)`` with a bi-additive product ``mul``.

    The product need not be associative or unital.
    """

    def __init__(self, add_table, mul_table, name=None):
        add = np.array(add_table, dtype=np.int64)
        mul = np.array(mul_table, dtype=np.int64)
        if add.ndim != 2 or add.shape[0] != add.shape[1]:
            raise GammaError("addition table must be square")
        if mul.shape != add.shape:
            raise GammaError("product table must have the same shape as the addition table")
        n = add.shape[0]
        if n == 0:
            raise GammaError("ring must be non-empty")
        if add.min() < 0 or add.max() >= n or mul.min() < 0 or mul.max() >= n:
            raise GammaError("table entries out of range")
        self.size = n
        self.add_table = add
        self.mul_table = mul
        self.name = name or f"custom[{n}]"
        self._validate()
        add.setflags(write=False)
        mul.setflags(write=False)
        self.neg_table = np.array([int(np.where(add[a] == self.zero)[0][0]) for a in range(n)], dtype=np.int64)
        self.neg_table.setflags(write=False)
        sym = add[mul, mul.T]
        self.is_skew = bool(np.all(sym == self.zero))
        self.unit = self._find_unit()
        self.has_unit = self.unit is not None

    def _validate(self):
        add, mul, n = self.add_table, self.mul_table, self.size
        idx = np.arange(n)
        bad = np.argwhere(add != add.T)
        if len(bad):
            a, b = bad[0]
            raise GammaError(f"addition not commutative at ({a}, {b})")
        # (a+b)+c vs a+(b+c)
        lhs = add[add[:, :, None], idx[None, None, :]]
        rhs = add[idx[:, None, None], add[None, :, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            a, b, c = bad[0]
            raise GammaError(f"addition not associative at ({a}, {b}, {c})")
        zeros = [z for z in range(n) if np.array_equal(add[z], idx)]
        if not zeros:
            raise GammaError("addition has no neutral element")
        self.zero = zeros[0]
        for a in range(n):
            if not np.any(add[a] == self.zero):
                raise GammaError(f"element {a} has no negative")
        # (a+b)c = ac+bc
        lhs = mul[add[:, :, None], idx[None, None, :]]
        rhs = add[mul[:, None, :], mul[None, :, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            a, b, c = bad[0]
            raise GammaError(f"product not additive in the left argument at ({a}, {b}, {c})")
        # a(b+c) = ab+ac
        lhs = mul[idx[:, None, None], add[None, :, :]]
        rhs = add[mul[:, :, None], mul[:, None, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            a, b, c = bad[0]
            raise GammaError(f"product not additive in the right argument at ({a}, {b}, {c})")

    def _find_unit(self):
        idx = np.arange(self.size)
        for u in range(self.size):
            if np.array_equal(self.mul_table[u], idx) and np.array_equal(self.mul_table[:, u], idx):
                return u
        return None

    # arithmetic on raw indices; hot paths use these directly

    def add(self, a, b):
        return int(self.add_table[a, b])

    def neg(self, a):
        return int(self.neg_table[a])

    def sub(self, a, b):
        return int(self.add_table[a, self.neg_table[b]])

    def mul(self, a, b):
        return int(self.mul_table[a, b])

    def sum(self, items):
        acc = self.zero
        for x in items:
            acc = int(self.add_table[acc, x])
        return acc

    def elem(self, index):
        return GammaElem(self, index)

    def elements(self):
        return [GammaElem(self, i) for i in range(self.size)]

    def with_zero_product(self):
        """Same additive group, product identically zero."""
        return GammaRing(self.add_table, np.full_like(self.mul_table, self.zero), name=f"{self.name}/0")

    def __eq__(self, other):
        return (isinstance(other, GammaRing) and self.size == other.size
                and np.array_equal(self.add_table, other.add_table)
                and np.array_equal(self.mul_table, other.mul_table))

    def __hash__(self):
        return hash((self.size, self.add_table.tobytes(), self.mul_table.tobytes()))

    def __repr__(self):
        return f"GammaRing({self.name}, skew={self.is_skew}, unit={self.has_unit})"

    def to_dict(self):
        return {"size": self.size, "add": self.add_table.tolist(), "mul": self.mul_table.tolist()}

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data):
        if len(data["add"]) != data["size"]:
            raise GammaError("size field does not match table shape")
        return cls(data["add"], data["mul"])

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


class GammaElem:
    __slots__ = ("ring", "index")

    def __init__(self, ring, index):
        index = int(index)
        if not 0 <= index < ring.size:
            raise GammaError(f"index {index} out of range for ring of size {ring.size}")
        self.ring = ring
        self.index = index

    def _check(self, other):
        if not isinstance(other, GammaElem) or other.ring is not self.ring and other.ring != self.ring:
            raise GammaError("elements belong to different rings")

    def __add__(self, other):
        self._check(other)
        return GammaElem(self.ring, self.ring.add(self.index, other.index))

    def __sub__(self, other):
        self._check(other)
        return GammaElem(self.ring, self.ring.sub(self.index, other.index))

    def __mul__(self, other):
        self._check(other)
        return GammaElem(self.ring, self.ring.mul(self.index, other.index))

    def __neg__(self):
        return GammaElem(self.ring, self.ring.neg(self.index))

    def __eq__(self, other):
        return isinstance(other, GammaElem) and self.ring == other.ring and self.index == other.index

    def __hash__(self):
        return hash(self.index)

    def __int__(self):
        return self.index

    def __repr__(self):
        return f"GammaElem({self.index} in {self.ring.name})"


def gamma_add(a, b):
    return a + b


def gamma_neg(a):
    return -a


def gamma_mul(a, b):
    return a * b


def make_z_mod_m(m):
    """The ring Z/mZ with its usual product."""
    if not isinstance(m, (int, np.integer)) or isinstance(m, bool):
        raise GammaError("modulus must be an integer")
    if m < 1:
        raise GammaError(f"modulus must be positive, got {m}")
    r = np.arange(m)
    return GammaRing((r[:, None] + r[None, :]) % m, (r[:, None] * r[None, :]) % m, name=f"Z/{m}")


def make_custom(add_table, mul_table, name=None):
    return GammaRing(add_table, mul_table, name=name)


def make_direct_power(m, k, mul=None, name=None):
    """(Z/m)^k with elements encoded in base m; ``mul(a, b)`` acts on digit tuples."""
    size = m ** k
    digits = [tuple((x // m ** i) % m for i in range(k)) for x in range(size)]

    def enc(t):
        return sum((v % m) * m ** i for i, v in enumerate(t))

    add = [[enc([a + b for a, b in zip(digits[x], digits[y])]) for y in range(size)] for x in range(size)]
    if mul is None:
        prod = [[0] * size for _ in range(size)]
    else:
        prod = [[enc(mul(digits[x], digits[y])) for y in range(size)] for x in range(size)]
    return GammaRing(add, prod, name=name or f"(Z/{m})^{k}")


F2 = make_z_mod_m(2)
