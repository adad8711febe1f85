"""Centrally graded sets and groups over a finite generalized ring.

A graded set carries a degree map ``d: M -> Gamma`` and a Gamma-action that
preserves degrees. A centrally graded group is a group whose action comes from a
central morphism ``Z: Gamma -> G`` with ``d(Z(x)) = 0``.

Products of graded sets are quotients of the cartesian product by the
antidiagonal action ``(x.m1, m2) ~ (m1, x.m2)``. A class is stored through its
lexicographically smallest representative, so equal classes have equal
encodings and the associativity isomorphism becomes an identity of canonical
tuples (see :func:`flatten`).

All element and Gamma values are plain integers; vectorised paths take numpy
arrays.
"""

import itertools
from functools import cached_property

import numpy as np

from . import kernels

TABLE_LIMIT = 4096


class SizeLimitError(RuntimeError):
    pass


class GradedError(ValueError):
    pass


def _same_gamma(*objs):
    g = objs[0].gamma
    for o in objs[1:]:
        if o.gamma is not g and o.gamma != g:
            raise GradedError("graded objects live over different rings")
    return g


# ---------------------------------------------------------------------------
# graded sets


class GradedSet:
    """Finite set with degrees and a degree-preserving Gamma-action.

    ``action[x, m]`` is the index of ``x.m``.
    """

    def __init__(self, gamma, degree, action, label="M", names=None):
        self.gamma = gamma
        self.degree = np.asarray(degree, dtype=np.int64)
        self.action = np.asarray(action, dtype=np.int64)
        self.size = len(self.degree)
        self.label = label
        self._names = names

    def act(self, x, m):
        return int(self.action[x, m])

    def name(self, m):
        return self._names[m] if self._names else str(m)

    def leaves(self):
        return [self]

    def to_tuple(self, m):
        return (int(m),)

    def check_action(self):
        """Return a list of violated axioms (empty when the action is valid)."""
        g = self.gamma
        problems = []
        if not np.array_equal(self.action[g.zero], np.arange(self.size)):
            problems.append("zero does not act trivially")
        for x in range(g.size):
            for y in range(g.size):
                if not np.array_equal(self.action[g.add(x, y)], self.action[x][self.action[y]]):
                    problems.append(f"action not additive at ({x}, {y})")
        if np.any(self.degree[self.action] != self.degree[None, :]):
            problems.append("action changes degrees")
        return problems

    def __repr__(self):
        return f"<{type(self).__name__} {self.label} |{self.size}|>"


def unit_set(gamma):
    """The unit object: Gamma itself, degree zero, acting by translation."""
    return GradedSet(gamma, np.full(gamma.size, gamma.zero), gamma.add_table.copy(), label="E")


class ProductSet(GradedSet):
    """``left x_z right``: pairs modulo the antidiagonal Gamma-action.

    Carrier elements are numbered in increasing order of their canonical pair
    code ``m1 * |right| + m2``.
    """

    def __init__(self, left, right, label=None):
        gamma = _same_gamma(left, right)
        self.left = left
        self.right = right
        n2 = right.size
        neg = gamma.neg_table
        # key[x, m1, m2] encodes (x.m1, (-x).m2)
        keys = left.action[:, :, None] * n2 + right.action[neg][:, None, :]
        canon = keys.min(axis=0).reshape(-1)
        codes = np.unique(canon)
        self.codes = codes
        self.lookup = np.searchsorted(codes, canon)  # pair code -> carrier index
        self.pairs = np.stack([codes // n2, codes % n2], axis=1)
        degree = gamma.add_table[left.degree[self.pairs[:, 0]], right.degree[self.pairs[:, 1]]]
        acted = left.action[:, self.pairs[:, 0]] * n2 + self.pairs[:, 1][None, :]
        action = self.lookup[acted]
        super().__init__(gamma, degree, action, label=label or f"({left.label} x {right.label})")

    def index(self, m1, m2):
        """Carrier index of the class of ``(m1, m2)``; vectorised."""
        return self.lookup[np.asarray(m1) * self.right.size + np.asarray(m2)]

    def components(self, m):
        return int(self.pairs[m, 0]), int(self.pairs[m, 1])

    def leaves(self):
        return self.left.leaves() + self.right.leaves()

    def to_tuple(self, m):
        a, b = self.components(m)
        return self.left.to_tuple(a) + self.right.to_tuple(b)

    def from_tuple(self, tup):
        k = len(self.left.leaves())
        a = self.left.from_tuple(tup[:k]) if k > 1 else int(tup[0])
        rest = tup[k:]
        b = self.right.from_tuple(rest) if len(rest) > 1 else int(rest[0])
        return int(self.index(a, b))

    def name(self, m):
        a, b = self.components(m)
        return f"[{self.left.name(a)},{self.right.name(b)}]"


def graded_product_set(m1, m2):
    return ProductSet(m1, m2)


def _sum_zero_shifts(gamma, k):
    """All ``(x_1..x_k)`` in Gamma^k with ``x_1 + ... + x_k = 0``."""
    out = []
    for head in itertools.product(range(gamma.size), repeat=k - 1):
        out.append(head + (gamma.neg(gamma.sum(head)),))
    return np.array(out, dtype=np.int64).reshape(-1, k)


class NFoldSet(GradedSet):
    """Flat product ``M_1 x_z ... x_z M_n`` with canonical n-tuples.

    Two tuples are identified when they differ by ``(x_1.m_1, ..., x_n.m_n)``
    with ``sum x_i = 0``; each class is stored as its lexicographically smallest
    tuple.
    """

    def __init__(self, factors, label=None):
        gamma = _same_gamma(*factors)
        self.factors = list(factors)
        k = len(factors)
        sizes = [f.size for f in factors]
        self.sizes = sizes
        self.radix = np.array([int(np.prod(sizes[i + 1:])) for i in range(k)], dtype=np.int64)
        allt = np.array(list(itertools.product(*[range(s) for s in sizes])), dtype=np.int64).reshape(-1, k)
        shifts = _sum_zero_shifts(gamma, k)
        best = None
        for s in shifts:
            code = np.zeros(len(allt), dtype=np.int64)
            for i, f in enumerate(factors):
                code += f.action[s[i], allt[:, i]] * self.radix[i]
            best = code if best is None else np.minimum(best, code)
        self.codes = np.unique(best)
        self.lookup = np.searchsorted(self.codes, best)
        self.tuples = (self.codes[:, None] // self.radix[None, :]) % np.array(sizes)[None, :]
        degree = np.full(len(self.codes), gamma.zero, dtype=np.int64)
        for i, f in enumerate(factors):
            degree = gamma.add_table[degree, f.degree[self.tuples[:, i]]]
        action = np.empty((gamma.size, len(self.codes)), dtype=np.int64)
        for x in range(gamma.size):
            t = self.tuples.copy()
            t[:, 0] = factors[0].action[x, t[:, 0]]
            action[x] = self.lookup[t @ self.radix]
        super().__init__(gamma, degree, action, label=label or " x ".join(f.label for f in factors))

    def index(self, tup):
        return int(self.lookup[int(np.dot(np.asarray(tup, dtype=np.int64), self.radix))])

    def canonical(self, tup):
        return tuple(int(v) for v in self.tuples[self.index(tup)])

    def leaves(self):
        return list(self.factors)

    def to_tuple(self, m):
        return tuple(int(v) for v in self.tuples[m])

    def from_tuple(self, tup):
        return self.index(tup)


def flatten(product, m):
    """Canonical flat tuple of a (possibly nested) product element."""
    leaves = product.leaves()
    return NFoldSet(leaves).canonical(product.to_tuple(m)) if len(leaves) > 1 else (int(m),)


def reassociation_map(src, dst):
    """Index map ``src -> dst`` between two bracketings of the same leaves.

    Raises if the canonical flat carriers differ.
    """
    leaves = src.leaves()
    other = dst.leaves()
    if len(leaves) != len(other) or any(a is not b for a, b in zip(leaves, other)):
        raise GradedError("bracketings do not have the same leaves in the same order")
    flat = NFoldSet(leaves)
    a = np.array([flat.index(src.to_tuple(m)) for m in range(src.size)])
    b = np.array([flat.index(dst.to_tuple(m)) for m in range(dst.size)])
    if sorted(a.tolist()) != list(range(flat.size)) or sorted(b.tolist()) != list(range(flat.size)):
        raise GradedError("bracketings do not have the same canonical carrier")
    inv_b = np.empty_like(b)
    inv_b[b] = np.arange(len(b))
    return inv_b[a]


# ---------------------------------------------------------------------------
# graded groups


class GradedGroup(GradedSet):
    """Centrally graded group. Subclasses implement ``_mul_vec``.

    ``z_embed[x]`` is the element ``Z(x)``; the Gamma-action is ``x.g = Z(x) g``.
    """

    def __init__(self, gamma, degree, z_embed, identity, label="G", names=None):
        self.identity = int(identity)
        self.z_embed = np.asarray(z_embed, dtype=np.int64)
        self.gamma = gamma
        self.degree = np.asarray(degree, dtype=np.int64)
        self.size = len(self.degree)
        idx = np.arange(self.size)
        action = self.mul_vec(self.z_embed[:, None], idx[None, :])
        super().__init__(gamma, degree, action, label=label, names=names)

    def _mul_vec(self, a, b):
        raise NotImplementedError

    def mul_vec(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        if "table" in self.__dict__:
            return self.table[a, b]
        return self._mul_vec(a, b)

    def mul(self, a, b):
        table = self.__dict__.get("table")
        if table is not None:
            return int(table[a, b])
        return int(self.mul_vec(a, b))

    def prod(self, items):
        acc = self.identity
        for g in items:
            acc = self.mul(acc, g)
        return acc

    def z(self, x):
        return int(self.z_embed[x])

    def power(self, g, k):
        acc = self.identity
        for _ in range(k):
            acc = self.mul(acc, g)
        return acc

    @cached_property
    def table(self):
        if self.size > TABLE_LIMIT:
            raise SizeLimitError(f"group of order {self.size} exceeds the table limit {TABLE_LIMIT}")
        idx = np.arange(self.size)
        return np.ascontiguousarray(self._mul_vec(idx[:, None], idx[None, :]))

    @cached_property
    def inverse(self):
        t = self.table
        inv = np.argmax(t == self.identity, axis=1)
        return inv

    def inv(self, g):
        return int(self.inverse[g])

    @cached_property
    def orders(self):
        return kernels.element_orders(self.table, self.identity)

    @cached_property
    def generators(self):
        """A small generating set, chosen greedily from high-order elements."""
        gens = []
        seen = np.zeros(self.size, dtype=bool)
        seen[self.identity] = True
        order = sorted(range(self.size), key=lambda g: (-int(self.orders[g]), g))
        for g in order:
            if seen[g]:
                continue
            gens.append(g)
            seen = self._closure_mask(gens)
            if seen.all():
                break
        return gens

    def _closure_mask(self, gens):
        seen = np.zeros(self.size, dtype=bool)
        seen[self.identity] = True
        frontier = [self.identity]
        t = self.table
        while frontier:
            nxt = []
            for h in frontier:
                for s in gens:
                    y = int(t[h, s])
                    if not seen[y]:
                        seen[y] = True
                        nxt.append(y)
            frontier = nxt
        return seen

    def is_abelian(self):
        return bool(np.array_equal(self.table, self.table.T))

    def check(self):
        """Exhaustively check group and grading axioms; return violations."""
        problems = []
        t = self.table
        n = self.size
        idx = np.arange(n)
        g = self.gamma
        e = self.identity
        if not (np.array_equal(t[e], idx) and np.array_equal(t[:, e], idx)):
            problems.append("identity is not two-sided")
        if not all(np.array_equal(np.sort(row), idx) for row in t):
            problems.append("table is not a Latin square")
        if kernels.associativity_defects(t, self.generators):
            problems.append("multiplication is not associative")
        if np.any(self.degree[t] != g.add_table[self.degree[:, None], self.degree[None, :]]):
            problems.append("degree is not additive")
        if self.degree[e] != g.zero:
            problems.append("identity has nonzero degree")
        zs = self.z_embed
        if np.any(self.degree[zs] != g.zero):
            problems.append("d o Z is not zero")
        if zs[g.zero] != e or np.any(t[zs[:, None], zs[None, :]] != zs[g.add_table]):
            problems.append("Z is not a group morphism")
        if np.any(t[zs, :] != t[:, zs].T):
            problems.append("Z is not central")
        return problems

    def validate(self):
        problems = self.check()
        if problems:
            raise GradedError(f"{self.label}: " + "; ".join(problems))
        return self


class TableGroup(GradedGroup):
    def __init__(self, gamma, table, degree, z_embed, identity=0, label="G", names=None):
        self.__dict__["table"] = np.ascontiguousarray(np.asarray(table, dtype=np.int64))
        super().__init__(gamma, degree, z_embed, identity, label=label, names=names)

    def _mul_vec(self, a, b):
        return self.table[a, b]


def as_table_group(group, label=None):
    return TableGroup(group.gamma, group.table, group.degree, group.z_embed, group.identity,
                      label=label or group.label, names=group._names)


def gamma_10(gamma):
    """``Gamma x Gamma`` with the direct product law, ``d(x0,x1) = x1``, ``Z(x) = (x,0)``.

    Index of ``(x0, x1)`` is ``x0 + |Gamma| * x1``.
    """
    return _gamma_square(gamma, twisted=False)


def gamma_01(gamma):
    """``Gamma x Gamma`` with law ``(x0 + y0 + x1 y1, x1 + y1)``."""
    return _gamma_square(gamma, twisted=True)


def _gamma_square(gamma, twisted):
    n = gamma.size
    x0, x1 = np.divmod(np.arange(n * n), n)[::-1]
    a0, b0 = x0[:, None], x0[None, :]
    a1, b1 = x1[:, None], x1[None, :]
    s0 = gamma.add_table[a0, b0]
    if twisted:
        s0 = gamma.add_table[s0, gamma.mul_table[a1, b1]]
    s1 = gamma.add_table[a1, b1]
    table = s0 + n * s1
    label = "Gamma01" if twisted else "Gamma10"
    if gamma.size == 2:
        label = "Q(Z)" if twisted else "Q(1)"
        names = ["1", "Z", "e1", "Ze1"]
    else:
        names = None
    return TableGroup(gamma, table, x1, np.arange(n), gamma.zero, label=label, names=names)


def grading_automorphism(group, g):
    """``g -> Z^{d(g)} g``."""
    return group.mul(group.z(int(group.degree[g])), g)


def grading_automorphism_map(group):
    idx = np.arange(group.size)
    return group.mul_vec(group.z_embed[group.degree], idx)


def negative_grading(group):
    """Same group with degrees negated."""
    return TableGroup(group.gamma, group.table, group.gamma.neg_table[group.degree], group.z_embed,
                      group.identity, label=f"{group.label}^-", names=group._names)


class DualGroup(GradedGroup):
    """Braided dual: ``x . y = Z^{d(y) d(x)} x y`` on the same carrier."""

    def __init__(self, base):
        self.base = base
        super().__init__(base.gamma, base.degree, base.z_embed, base.identity,
                         label=f"{base.label}^v", names=base._names)

    def _mul_vec(self, a, b):
        g = self.gamma
        u = g.mul_table[self.degree[b], self.degree[a]]
        return self.base.mul_vec(self.z_embed[u], self.base.mul_vec(a, b))

    @cached_property
    def inverse(self):
        g = self.gamma
        d = self.degree
        u = g.mul_table[d, d]
        return self.base.mul_vec(self.z_embed[u], self.base.inverse)


def braided_dual(group):
    return DualGroup(group)


class ProductGroup(GradedGroup):
    """Graded product group ``G1 x^_Z G2``.

    Law ``[g1,g2][h1,h2] = Z^{d(h1) d(g2)} [g1 h1, g2 h2]``. With ``twisted=False``
    the twist is dropped, giving the plain central product over Z.
    """

    def __init__(self, left, right, twisted=True, label=None):
        self.carrier = ProductSet(left, right)
        self.pairs = self.carrier.pairs
        self.left = left
        self.right = right
        self.twisted = twisted
        gamma = self.carrier.gamma
        e = int(self.carrier.index(left.identity, right.identity))
        z_embed = self.carrier.index(left.z_embed, right.identity)
        sep = " x^ " if twisted else " x_Z "
        super().__init__(gamma, self.carrier.degree, z_embed, e,
                         label=label or f"({left.label}{sep}{right.label})")

    def _mul_vec(self, a, b):
        g1, g2 = self.pairs[a, 0], self.pairs[a, 1]
        h1, h2 = self.pairs[b, 0], self.pairs[b, 1]
        first = self.left.mul_vec(g1, h1)
        if self.twisted:
            u = self.gamma.mul_table[self.left.degree[h1], self.right.degree[g2]]
            first = self.left.mul_vec(self.left.z_embed[u], first)
        return self.carrier.index(first, self.right.mul_vec(g2, h2))

    @cached_property
    def inverse(self):
        g1, g2 = self.pairs[:, 0], self.pairs[:, 1]
        first = self.left.inverse[g1]
        if self.twisted:
            u = self.gamma.mul_table[self.left.degree[g1], self.right.degree[g2]]
            first = self.left.mul_vec(self.left.z_embed[u], first)
        return self.carrier.index(first, self.right.inverse[g2])

    def index(self, g1, g2):
        return self.carrier.index(g1, g2)

    def components(self, m):
        return self.carrier.components(m)

    def leaves(self):
        return self.carrier.leaves()

    def to_tuple(self, m):
        return self.carrier.to_tuple(m)

    def from_tuple(self, tup):
        return self.carrier.from_tuple(tup)

    def name(self, m):
        return self.carrier.name(m)


def graded_product_group(g1, g2):
    return ProductGroup(g1, g2, twisted=True)


def nfold_product_group(groups, twisted=True):
    """Left-nested product ``((G1 x G2) x G3) ...``."""
    acc = groups[0]
    for g in groups[1:]:
        acc = ProductGroup(acc, g, twisted=twisted)
    return acc


# ---------------------------------------------------------------------------
# braidings


def braiding(p12, p21=None, zero_product=False):
    """Braiding ``[x1, x2] -> Z^{d(x2) d(x1)} [x2, x1]`` as an index array.

    ``p12`` is ``M1 x_z M2``; ``p21`` defaults to ``M2 x_z M1``. With
    ``zero_product`` the twist is dropped (the plain symmetric swap).
    """
    if p21 is None:
        p21 = ProductSet(p12.right, p12.left)
    g = p12.gamma
    x1, x2 = p12.pairs[:, 0], p12.pairs[:, 1]
    swapped = p21.index(x2, x1)
    if zero_product:
        return swapped
    u = g.mul_table[p12.right.degree[x2], p12.left.degree[x1]]
    return p21.action[u, swapped]


def braiding_inverse(p21, p12=None):
    """``[y1, y2] -> Z^{-d(y1) d(y2)} [y2, y1]`` from ``M2 x M1`` back to ``M1 x M2``."""
    if p12 is None:
        p12 = ProductSet(p21.right, p21.left)
    g = p21.gamma
    y1, y2 = p21.pairs[:, 0], p21.pairs[:, 1]
    u = g.neg_table[g.mul_table[p21.left.degree[y1], p21.right.degree[y2]]]
    return p12.action[u, p12.index(y2, y1)]


def product_morphism(src, dst, f, g):
    """``[m1, m2] -> [f m1, g m2]`` for equivariant maps ``f``, ``g`` (index arrays)."""
    return dst.index(np.asarray(f)[src.pairs[:, 0]], np.asarray(g)[src.pairs[:, 1]])


def _carrier(obj):
    return obj.carrier if isinstance(obj, ProductGroup) else obj


def braiding_is_group_iso_check(g1, g2):
    """Check that the braiding ``G1 x^ G2 -> G2 x^ G1`` is multiplicative.

    Returns ``(True, None)`` or ``(False, (a, b))`` for a failing pair.
    """
    p12 = ProductGroup(g1, g2)
    p21 = ProductGroup(g2, g1)
    beta = braiding(p12.carrier, p21.carrier)
    lhs = beta[p12.table]
    rhs = p21.table[beta[:, None], beta[None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        return False, (int(bad[0, 0]), int(bad[0, 1]))
    return True, None


def _inversion_exponent(gamma, degs, sigma):
    """``sum_{i<j, sigma(i)>sigma(j)} d(x_sigma(i)) d(x_sigma(j))`` (0-based sigma)."""
    u = gamma.zero
    n = len(sigma)
    for i in range(n):
        for j in range(i + 1, n):
            if sigma[i] > sigma[j]:
                u = gamma.add(u, gamma.mul(degs[sigma[i]], degs[sigma[j]]))
    return u


def permutation_braiding(src, sigma, m, dst=None):
    """Apply the braiding for ``sigma`` to element ``m`` of the flat product ``src``.

    ``sigma`` is a 0-based sequence; the result lives in the product of
    ``M_sigma(0), ..., M_sigma(n-1)`` and equals ``Z^u [x_sigma(0), ...]`` with
    ``u`` summed over the inversions of ``sigma``.
    """
    gamma = src.gamma
    if not gamma.is_skew:
        raise GradedError("permutation braidings need a skew product")
    if dst is None:
        dst = NFoldSet([src.factors[s] for s in sigma])
    x = src.to_tuple(m)
    degs = [int(f.degree[v]) for f, v in zip(src.factors, x)]
    u = _inversion_exponent(gamma, degs, sigma)
    return dst.act(u, dst.index([x[s] for s in sigma]))


def adjacent_braiding(src, i, m, dst=None):
    """Braid positions ``i`` and ``i+1`` of a flat product element (works for any Gamma)."""
    k = len(src.factors)
    perm = list(range(k))
    perm[i], perm[i + 1] = perm[i + 1], perm[i]
    if dst is None:
        dst = NFoldSet([src.factors[s] for s in perm])
    x = src.to_tuple(m)
    g = src.gamma
    u = g.mul(int(src.factors[i + 1].degree[x[i + 1]]), int(src.factors[i].degree[x[i]]))
    return dst.act(u, dst.index([x[s] for s in perm]))


def braid_word(src, word, m):
    """Compose adjacent braidings ``s_{w1}``, then ``s_{w2}``, ... (0-based positions).

    Returns ``(product, element)``.
    """
    cur, el = src, m
    for i in word:
        k = len(cur.factors)
        perm = list(range(k))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        nxt = NFoldSet([cur.factors[s] for s in perm])
        el = adjacent_braiding(cur, i, el, nxt)
        cur = nxt
    return cur, el


def reduced_words(sigma):
    """All reduced words ``w`` with ``s_{w1} o s_{w2} o ... = sigma`` as a composition of
    position maps, i.e. ``x o s_{w1} o s_{w2} ... = x o sigma`` for tuples ``x``.
    """
    sigma = tuple(sigma)
    n = len(sigma)
    out = []

    def rec(cur, word):
        if cur == tuple(range(n)):
            out.append(tuple(reversed(word)))
            return
        for i in range(n - 1):
            if cur[i] > cur[i + 1]:
                nxt = list(cur)
                nxt[i], nxt[i + 1] = nxt[i + 1], nxt[i]
                rec(tuple(nxt), word + [i])

    rec(sigma, [])
    return out


# ---------------------------------------------------------------------------
# closed-form n-fold products


def nfold_dual_exponent(gamma, degs):
    u = gamma.zero
    for i in range(len(degs)):
        for j in range(i + 1, len(degs)):
            u = gamma.add(u, gamma.mul(degs[j], degs[i]))
    return u


def nfold_dual_product(group, elems):
    """Product ``g1 . g2 . ... . gn`` in the braided dual, via the closed form."""
    degs = [int(group.degree[g]) for g in elems]
    u = nfold_dual_exponent(group.gamma, degs)
    return group.mul(group.z(u), group.prod(elems))


def rows_exponent(gamma, degs):
    """Twist for multiplying rows of a p-fold product: ``sum_{k<l, i>j} d_{l j} d_{k i}``.

    ``degs[k][i]`` is the degree of the ``i``-th component of the ``k``-th row.
    """
    u = gamma.zero
    n = len(degs)
    p = len(degs[0]) if n else 0
    for k in range(n):
        for ell in range(k + 1, n):
            for i in range(p):
                for j in range(i):
                    u = gamma.add(u, gamma.mul(degs[ell][j], degs[k][i]))
    return u


def nfold_graded_product(product, factors, rows):
    """Closed-form product of ``rows`` in the left-nested product ``product``.

    ``factors`` lists the leaf groups; each row is a tuple of leaf elements.
    Returns the carrier index in ``product``.
    """
    p = len(factors)
    for r in rows:
        if len(r) != p:
            raise GradedError("row length does not match the number of factors")
    gamma = factors[0].gamma
    degs = [[int(factors[i].degree[r[i]]) for i in range(p)] for r in rows]
    u = rows_exponent(gamma, degs)
    cols = [factors[i].prod([r[i] for r in rows]) for i in range(p)]
    return product.act(u, product.from_tuple(tuple(cols)))


def two_factor_exponent(gamma, degs):
    """Twist for ``n`` elements of a 2-factor product: ``sum_{i<j} d_{j1} d_{i2}``."""
    u = gamma.zero
    for i in range(len(degs)):
        for j in range(i + 1, len(degs)):
            u = gamma.add(u, gamma.mul(degs[j][0], degs[i][1]))
    return u


def nfold_inverse(product, factors, tup):
    """Closed-form inverse ``Z^{sum_{i<j} d_i d_j} [g1^-1, ..., gn^-1]``."""
    gamma = factors[0].gamma
    degs = [int(f.degree[g]) for f, g in zip(factors, tup)]
    u = gamma.zero
    for i in range(len(degs)):
        for j in range(i + 1, len(degs)):
            u = gamma.add(u, gamma.mul(degs[i], degs[j]))
    inv = tuple(f.inv(g) for f, g in zip(factors, tup))
    return product.act(u, product.from_tuple(inv))


# ---------------------------------------------------------------------------
# central extensions


def central_extension_cocycle(group, section=None):
    """Cocycle of ``G`` as a central extension of ``G / Z(Gamma)`` by Gamma.

    ``section[c]`` is the chosen representative of coset ``c``; cosets are
    numbered by their smallest element. Returns ``(tau, coset_of, section)``
    where ``tau[c1, c2]`` satisfies ``s(c1) s(c2) = Z^tau s(c1 c2)``.
    """
    gamma = group.gamma
    if len(set(group.z_embed.tolist())) != gamma.size:
        raise GradedError("Z is not injective")
    orbit_min = group.action.min(axis=0)
    reps = np.unique(orbit_min)
    coset_of = np.searchsorted(reps, orbit_min)
    if section is None:
        section = reps
    section = np.asarray(section, dtype=np.int64)
    if not np.array_equal(coset_of[section], np.arange(len(reps))):
        raise GradedError("section does not pick one element per coset")
    prod = group.table[section[:, None], section[None, :]]
    target = section[coset_of[prod]]
    # find x with Z(x) * target == prod
    zmul = group.action  # zmul[x, g] = Z(x) g
    tau = np.full(prod.shape, -1, dtype=np.int64)
    for x in range(gamma.size):
        tau[zmul[x, target] == prod] = x
    return tau, coset_of, section


def cocycle_defects(gamma, tau, quotient_table):
    """Count triples violating ``tau(a,b) + tau(ab,c) = tau(a,bc) + tau(b,c)``."""
    n = len(tau)
    bad = 0
    for a in range(n):
        ab = quotient_table[a]
        lhs = gamma.add_table[tau[a][:, None], tau[ab][:, :]]
        rhs = gamma.add_table[tau[a][quotient_table], tau]
        bad += int(np.count_nonzero(lhs != rhs))
    return bad


def quotient_table(group, coset_of, section):
    return coset_of[group.table[section[:, None], section[None, :]]]
