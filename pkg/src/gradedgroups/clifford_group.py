"""Discrete Clifford groups Q(t) over F2 as (Z-exponent, subset) pairs.

An element ``Z^z e_A`` is encoded as the integer ``(A << 1) | z`` where bit
``i-1`` of ``A`` stands for generator ``e_i``. Multiplication is

    e_A e_B = t_{A & B} * gamma(A, B) * e_{A ^ B}

with ``gamma(A, B)`` the parity of ``|{(a, b) in A x B : a > b}|`` and
``t_S`` the parity of the number of ``Z`` flags on ``S``.
"""

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels
from .gamma import F2
from .graded import TABLE_LIMIT, GradedGroup, SizeLimitError, TableGroup

MAX_N = 62  # masks are int64 and the element code needs one extra bit
ENUM_LIMIT = 20  # structure analysis enumerates 2^(n+1) elements


class SignatureError(ValueError):
    pass


@dataclass(frozen=True)
class Signature:
    """Flags ``t_i`` in ``{1, Z}`` stored as bits (0 for 1, 1 for Z)."""

    t: tuple

    def __post_init__(self):
        t = tuple(int(v) for v in self.t)
        if any(v not in (0, 1) for v in t):
            raise SignatureError("signature flags must be 0 (for 1) or 1 (for Z)")
        if len(t) > MAX_N:
            raise SignatureError(f"at most {MAX_N} generators are supported")
        object.__setattr__(self, "t", t)

    @classmethod
    def from_pq(cls, p, q):
        if p < 0 or q < 0:
            raise SignatureError("p and q must be non-negative")
        return cls((0,) * p + (1,) * q)

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if not text:
            return cls(())
        out = []
        for tok in text.split(","):
            tok = tok.strip()
            if tok == "1":
                out.append(0)
            elif tok.upper() == "Z" or tok == "-1":
                out.append(1)
            else:
                raise SignatureError(f"bad signature token {tok!r}; use 1 or Z")
        return cls(tuple(out))

    @property
    def n(self):
        return len(self.t)

    @property
    def tmask(self):
        return sum(1 << i for i, v in enumerate(self.t) if v)

    @property
    def pq(self):
        return self.t.count(0), self.t.count(1)

    def is_uniform(self):
        return len(set(self.t)) <= 1

    def __add__(self, other):
        # juxtaposition t (+) s
        return Signature(self.t + other.t)

    def __str__(self):
        return ",".join("Z" if v else "1" for v in self.t)


@dataclass(frozen=True, order=True)
class VeeElement:
    z: int
    A: int

    @property
    def code(self):
        return (self.A << 1) | self.z

    @classmethod
    def from_code(cls, code):
        code = int(code)
        return cls(code & 1, code >> 1)

    @classmethod
    def from_indices(cls, indices, z=0):
        return cls(z, subset_mask(indices))

    def indices(self):
        return mask_indices(self.A)

    @property
    def degree(self):
        return popcount(self.A) & 1

    def render(self, n=None):
        idx = self.indices()
        if not idx:
            return "Z" if self.z else "1"
        sep = "," if (n or max(idx)) >= 10 else ""
        body = sep.join(str(i) for i in idx)
        base = f"e_{body}" if len(body) == 1 else "e_{" + body + "}"
        return "Z " + base if self.z else base

    def to_json(self):
        return {"z": self.z, "A": self.indices()}

    @classmethod
    def from_json(cls, data):
        return cls.from_indices(data["A"], int(data["z"]))

    def __str__(self):
        return self.render()


def popcount(x):
    return bin(x).count("1")


def subset_mask(indices):
    m = 0
    for i in indices:
        if i < 1:
            raise SignatureError("generator indices start at 1")
        m |= 1 << (i - 1)
    return m


def mask_indices(mask):
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def inversion_count(A, B):
    """``|{(a, b) in A x B : a > b}|`` as a full integer."""
    total = 0
    j = 0
    while B >> j:
        if (B >> j) & 1:
            total += popcount(A >> (j + 1))
        j += 1
    return total


def gamma_cocycle(A, B):
    return inversion_count(A, B) & 1


def t_measure(sig, S):
    return popcount(S & sig.tmask) & 1


def _check_fits(sig, *elems):
    for x in elems:
        if x.A >> sig.n:
            raise SignatureError(f"element {x} has generators outside 1..{sig.n}")


def vee_mul(sig, x, y):
    _check_fits(sig, x, y)
    z = x.z ^ y.z ^ gamma_cocycle(x.A, y.A) ^ t_measure(sig, x.A & y.A)
    return VeeElement(z, x.A ^ y.A)


def square_bit(sig, A):
    """Z-exponent of ``e_A^2``."""
    return gamma_cocycle(A, A) ^ t_measure(sig, A)


def vee_inverse(sig, x):
    _check_fits(sig, x)
    return VeeElement(x.z ^ square_bit(sig, x.A), x.A)


def vee_order(sig, x):
    _check_fits(sig, x)
    if x.A == 0:
        return 2 if x.z else 1
    return 4 if square_bit(sig, x.A) else 2


def conjugate(sig, A, B):
    """``e_A e_B e_A^{-1} = Z^u e_B`` with ``u = |A||B| - |A & B|``; returns ``(u mod 2, B)``."""
    return (popcount(A) * popcount(B) - popcount(A & B)) & 1, B


def conjugate_direct(sig, A, B):
    x = VeeElement(0, A)
    r = vee_mul(sig, vee_mul(sig, x, VeeElement(0, B)), vee_inverse(sig, x))
    return r.z, r.A


def display_order(n):
    """Element codes ordered: even subsets first, then by size, then lexicographically; e_A before Z e_A."""
    subsets = sorted(range(1 << n), key=lambda A: (popcount(A) & 1, popcount(A), mask_indices(A)))
    return [(A << 1) | z for A in subsets for z in (0, 1)]


class VeeGroup(GradedGroup):
    """Q(t) as a centrally F2-graded group; element ``i`` has code ``i``."""

    def __init__(self, sig):
        if isinstance(sig, str):
            sig = Signature.parse(sig)
        self.sig = sig
        n = sig.n
        if n > ENUM_LIMIT:
            raise SizeLimitError(f"enumerating Q(t) needs n <= {ENUM_LIMIT}, got {n}")
        codes = np.arange(2 << n, dtype=np.int64)
        degree = np.bitwise_count(codes >> 1) & 1
        super().__init__(F2, degree, [0, 1], 0, label=f"Q({sig})")

    def _mul_vec(self, a, b):
        return kernels.vee_mul_vec(a, b, self.sig.tmask)

    @cached_property
    def table(self):
        if self.size > TABLE_LIMIT:
            raise SizeLimitError(f"group of order {self.size} exceeds the table limit {TABLE_LIMIT}")
        return kernels.vee_mul_table(self.sig.n, self.sig.tmask)

    @cached_property
    def inverse(self):
        codes = np.arange(self.size, dtype=np.int64)
        sq = self._mul_vec(codes & ~1, codes & ~1) & 1
        return codes ^ sq

    @cached_property
    def orders(self):
        codes = np.arange(self.size, dtype=np.int64)
        sq = self._mul_vec(codes, codes)
        fourth = self._mul_vec(sq, sq)
        if np.any(fourth != 0):
            raise ArithmeticError("element of order > 4 found")
        out = np.where(sq == 0, 2, 4)
        out[0] = 1
        return out

    @cached_property
    def generators(self):
        return [1 << (i + 1) for i in range(self.sig.n)] + [1]

    def name(self, m):
        return VeeElement.from_code(m).render(self.sig.n)

    def element(self, m):
        return VeeElement.from_code(m)


def vee_group(sig):
    return VeeGroup(sig)


def as_graded_group(sig):
    return VeeGroup(sig)


def enumerate_elements(sig):
    _enum_guard(sig)
    return [VeeElement.from_code(c) for c in range(2 << sig.n)]


def _enum_guard(sig):
    if sig.n > ENUM_LIMIT:
        raise SizeLimitError(f"structure analysis needs n <= {ENUM_LIMIT}, got {sig.n}")


def group_order(sig):
    return len(set(enumerate_elements(sig)))


def _conjugation_by_generators(sig):
    """Array ``conj[k, x] = s_k x s_k^{-1}`` for the generators ``s_k = e_k``."""
    n = sig.n
    codes = np.arange(2 << n, dtype=np.int64)
    rows = []
    for k in range(n):
        s = 1 << (k + 1)
        sinv = s | square_bit(sig, 1 << k)
        rows.append(kernels.vee_mul_vec(kernels.vee_mul_vec(s, codes, sig.tmask), sinv, sig.tmask))
    if not rows:
        return np.empty((0, len(codes)), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def center(sig):
    """Center elements and an isomorphism tag (``C2``, ``C4`` or ``C2^2``; larger when abelian)."""
    _enum_guard(sig)
    codes = np.arange(2 << sig.n, dtype=np.int64)
    conj = _conjugation_by_generators(sig)
    central = np.all(conj == codes[None, :], axis=0)
    elems = [VeeElement.from_code(c) for c in codes[central]]
    return elems, _abelian_tag(sig, elems)


def _abelian_tag(sig, elems):
    size = len(elems)
    if size == 2:
        return "C2"
    if size == 4:
        return "C4" if any(vee_order(sig, x) == 4 for x in elems) else "C2^2"
    orders = [vee_order(sig, x) for x in elems]
    k4 = int(math.log2(sum(1 for o in orders if o <= 2)))
    r = int(math.log2(size))
    # an abelian group of exponent <= 4 with 2^k4 elements of order <= 2 and order 2^r
    fours = r - k4
    twos = k4 - fours
    parts = ["C4" + (f"^{fours}" if fours > 1 else "")] if fours else []
    if twos:
        parts.append("C2" + (f"^{twos}" if twos > 1 else ""))
    return " x ".join(parts)


def center_tag_stated_rule(n):
    """Center type for t = (1, ..., 1), n odd, as stated by the mod-4 rule
    ``C4 if n = 1 mod 4, C2^2 if n = 3 mod 4``.

    Kept for comparison only; :func:`center` computes the tag from ``e_n^2``.
    """
    if n % 2 == 0:
        return "C2"
    return "C4" if n % 4 == 1 else "C2^2"


def pseudoscalar_square_bit(sig):
    full = (1 << sig.n) - 1
    return square_bit(sig, full)


def conjugacy_classes(sig):
    """Partition of the elements into classes, as sorted lists of codes.

    Orbits of conjugation by the generators, which generate the group.
    """
    _enum_guard(sig)
    size = 2 << sig.n
    label = np.arange(size, dtype=np.int64)
    if sig.n:
        conj = _conjugation_by_generators(sig)
        while True:
            new = label.copy()
            for row in conj:
                new = np.minimum(new, new[row])
                np.minimum.at(new, row, new.copy())
            if np.array_equal(new, label):
                break
            label = new
    parent = label
    classes = {}
    for x, r in enumerate(parent.tolist()):
        classes.setdefault(r, []).append(x)
    return [classes[k] for k in sorted(classes)]


def class_count(sig):
    return len(conjugacy_classes(sig))


def commutator_subgroup(sig):
    """Subgroup generated by all commutators ``x y x^-1 y^-1``."""
    _enum_guard(sig)
    G = VeeGroup(sig)
    codes = np.arange(G.size, dtype=np.int64)
    comms = set()
    gens = [c for c in codes.tolist() if c & 1 == 0]
    # commutators only depend on the subset parts
    for a in gens:
        xy = G.mul_vec(a, codes)
        yx = G.mul_vec(codes, a)
        # x y x^-1 y^-1 = (xy)(yx)^-1
        comms.update(G.mul_vec(xy, G.inverse[yx]).tolist())
    sub = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for h in frontier:
            for c in comms:
                y = G.mul(h, c)
                if y not in sub:
                    sub.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(sub)


def commutator_check(sig):
    """True when ``[G, G]`` lies in ``{1, Z}``."""
    return set(commutator_subgroup(sig)) <= {0, 1}


def inner_automorphism_count(sig):
    """``|G / Z(G)|``."""
    return (2 << sig.n) // len(center(sig)[0])


def hyperoctahedral_automorphism(sig, sigma, x):
    """``Phi_sigma(Z^z e_A) = Z^(z+u) e_sigma(A)`` for a permutation of 1..n.

    ``sigma[k-1]`` is the image of generator ``k``; ``u`` counts pairs
    ``i < j`` in ``A`` with ``sigma(i) > sigma(j)``.
    """
    if not sig.is_uniform():
        raise SignatureError("permutation automorphisms need all t_i equal")
    sigma = tuple(int(s) for s in sigma)
    if sorted(sigma) != list(range(1, sig.n + 1)):
        raise SignatureError(f"{sigma} is not a permutation of 1..{sig.n}")
    idx = x.indices()
    u = sum(1 for a, b in itertools.combinations(idx, 2) if sigma[a - 1] > sigma[b - 1])
    return VeeElement(x.z ^ (u & 1), subset_mask(sigma[a - 1] for a in idx))


def hyperoctahedral_map(sig, sigma):
    return np.array([hyperoctahedral_automorphism(sig, sigma, VeeElement.from_code(c)).code
                     for c in range(2 << sig.n)], dtype=np.int64)


def grading_automorphism_map(sig):
    codes = np.arange(2 << sig.n, dtype=np.int64)
    return codes ^ (np.bitwise_count(codes >> 1) & 1)


def inner_automorphism_map(sig, A):
    codes = np.arange(2 << sig.n, dtype=np.int64)
    x = A << 1
    xinv = x | square_bit(sig, A)
    return kernels.vee_mul_vec(kernels.vee_mul_vec(x, codes, sig.tmask), xinv, sig.tmask)


def alpha_is_inner(sig):
    """Search all ``e_A`` for a conjugation equal to the grading automorphism."""
    alpha = grading_automorphism_map(sig)
    return any(np.array_equal(inner_automorphism_map(sig, A), alpha) for A in range(1 << sig.n))


def hyperoctahedral_generators(sig):
    """Adjacent transpositions, inner automorphisms by ``e_k``, and the grading automorphism."""
    n = sig.n
    gens = []
    for k in range(1, n):
        sigma = list(range(1, n + 1))
        sigma[k - 1], sigma[k] = sigma[k], sigma[k - 1]
        gens.append(hyperoctahedral_map(sig, sigma))
    for k in range(n):
        gens.append(inner_automorphism_map(sig, 1 << k))
    gens.append(grading_automorphism_map(sig))
    return gens


def automorphism_group_order(sig, generators=None):
    """Order of the group of automorphisms generated by ``generators``.

    ``generators`` are permutations of the element codes. With ``None`` the
    full automorphism group is counted by exhaustive search.
    """
    if generators is None:
        from ._backtrack import count_isomorphisms
        G = VeeGroup(sig)
        return count_isomorphisms(G, G)
    from sympy.combinatorics import Permutation, PermutationGroup
    perms = [Permutation([int(v) for v in g]) for g in generators]
    return int(PermutationGroup(perms).order())


def hyperoctahedral_order(sig):
    return automorphism_group_order(sig, hyperoctahedral_generators(sig))


def even_part(sig):
    """Signature ``(Z t1 t2, ..., Z t1 tn)`` of the even subgroup."""
    if sig.n < 2:
        raise SignatureError("even part needs n >= 2")
    t1 = sig.t[0]
    return Signature(tuple(1 ^ t1 ^ tk for tk in sig.t[1:]))


def even_subgroup(sig):
    """The even elements of Q(t) as a graded group with trivial degrees."""
    G = VeeGroup(sig)
    evens = np.array([c for c in range(G.size) if G.degree[c] == 0], dtype=np.int64)
    pos = np.full(G.size, -1, dtype=np.int64)
    pos[evens] = np.arange(len(evens))
    table = pos[G.table[evens[:, None], evens[None, :]]]
    names = [G.name(c) for c in evens]
    return TableGroup(F2, table, np.zeros(len(evens), dtype=np.int64), [0, 1], 0,
                      label=f"Q({sig})_0", names=names)


def even_part_embedding(sig):
    """Images of ``Z, e'_1, ..., e'_{n-1}`` of Q(even_part(sig)) in Q(t): ``e'_k -> e_1 e_{k+1}``."""
    images = [1]
    for k in range(2, sig.n + 1):
        images.append(vee_mul(sig, VeeElement(0, 1), VeeElement(0, 1 << (k - 1))).code)
    return images
