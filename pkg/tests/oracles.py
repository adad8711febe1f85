"""Reference implementations that share no arithmetic with the package.

* Q(t) as signed integer matrices (Jordan-Wigner style): generator k is
  ``Z x ... x Z x P_k x 1 x ... x 1`` with ``P = X`` for flag 1 and
  ``P = J = [[0, -1], [1, 0]]`` for flag Z, so ``P^2 = +-1`` and distinct
  generators anticommute. ``Z`` is ``-1``.
* Clifford products by reordering words of generators (bubble sort).
* Automorphism counts by enumerating every assignment of generator images.
"""

import itertools
from fractions import Fraction

import numpy as np

_I = np.eye(2, dtype=np.int64)
_X = np.array([[0, 1], [1, 0]], dtype=np.int64)
_J = np.array([[0, -1], [1, 0]], dtype=np.int64)
_S = np.array([[1, 0], [0, -1]], dtype=np.int64)


def generator_matrices(t):
    n = len(t)
    out = []
    for k in range(n):
        m = np.ones((1, 1), dtype=np.int64)
        for j in range(n):
            f = _S if j < k else (_J if t[k] else _X) if j == k else _I
            m = np.kron(m, f)
        out.append(m)
    return out


class MatrixVee:
    """Faithful representation of Q(t) on ``2^n``-dimensional integer vectors."""

    def __init__(self, t):
        self.t = tuple(t)
        self.n = len(t)
        gens = generator_matrices(t)
        dim = 1 << self.n
        self.mats = {}
        for A in range(1 << self.n):
            m = np.eye(dim, dtype=np.int64)
            for k in range(self.n):
                if A >> k & 1:
                    m = m @ gens[k]
            self.mats[(A << 1)] = m
            self.mats[(A << 1) | 1] = -m
        self._lookup = {m.tobytes(): c for c, m in self.mats.items()}
        if len(self._lookup) != 2 << self.n:
            raise AssertionError("matrix representation is not faithful")

    def code(self, m):
        return self._lookup[np.ascontiguousarray(m).tobytes()]

    def mul(self, a, b):
        return self.code(self.mats[a] @ self.mats[b])

    def table(self):
        size = 2 << self.n
        return np.array([[self.mul(a, b) for b in range(size)] for a in range(size)], dtype=np.int64)


def word_product(t, A, B):
    """``e_A e_B`` by sorting the concatenated generator word; returns ``(scalar, mask)``."""
    word = [k for k in range(len(t)) if A >> k & 1] + [k for k in range(len(t)) if B >> k & 1]
    sign = Fraction(1)
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(word) - 1:
            if word[i] > word[i + 1]:
                word[i], word[i + 1] = word[i + 1], word[i]
                sign = -sign
                changed = True
            elif word[i] == word[i + 1]:
                sign *= Fraction(t[word[i]])
                del word[i:i + 2]
                changed = True
                continue
            i += 1
    mask = 0
    for k in word:
        mask |= 1 << k
    return sign, mask


def brute_hom_extension(table, identity, gens, images, target_table, target_identity):
    """Extend ``gens -> images`` along words; ``None`` if inconsistent or not injective."""
    size = len(table)
    phi = {identity: target_identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for h in frontier:
            for s, im in zip(gens, images):
                y = int(table[h, s])
                v = int(target_table[phi[h], im])
                if y in phi:
                    if phi[y] != v:
                        return None
                else:
                    phi[y] = v
                    nxt.append(y)
        frontier = nxt
    if len(phi) != size or len(set(phi.values())) != size:
        return None
    arr = np.array([phi[g] for g in range(size)], dtype=np.int64)
    if not np.array_equal(arr[table], target_table[arr[:, None], arr[None, :]]):
        return None
    return arr


def brute_automorphism_count(table, identity, gens):
    size = len(table)
    count = 0
    for images in itertools.product(range(size), repeat=len(gens)):
        if brute_hom_extension(table, identity, gens, images, table, identity) is not None:
            count += 1
    return count


def brute_center(table):
    return [g for g in range(len(table)) if np.array_equal(table[g], table[:, g])]


def brute_class_count(table, inverse):
    size = len(table)
    seen = set()
    count = 0
    for x in range(size):
        if x in seen:
            continue
        count += 1
        seen.update(int(table[table[g, x], inverse[g]]) for g in range(size))
    return count
