"""Exact group algebras K[G] over the rationals, and Clifford algebras on the subset basis.

Coefficients are :class:`fractions.Fraction`; elements are sparse maps from a
basis index to a nonzero coefficient, iterated in sorted order so printed
output is reproducible.
"""

import csv
import io
from fractions import Fraction
from itertools import product as iproduct

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .clifford_group import VeeElement, VeeGroup, class_count, inversion_count, mask_indices, popcount
from .graded import grading_automorphism_map

HALF = Fraction(1, 2)


def _clean(coeffs):
    return {k: Fraction(v) for k, v in coeffs.items() if v != 0}


class GroupAlgebraElement:
    __slots__ = ("group", "coeffs")

    def __init__(self, group, coeffs=None):
        self.group = group
        self.coeffs = _clean(coeffs or {})

    @classmethod
    def delta(cls, group, g, c=1):
        return cls(group, {int(g): Fraction(c)})

    @classmethod
    def zero(cls, group):
        return cls(group, {})

    def _check(self, other):
        if other.group is not self.group:
            raise ValueError("elements of different group algebras")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return GroupAlgebraElement(self.group, out)

    def __neg__(self):
        return GroupAlgebraElement(self.group, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        return GroupAlgebraElement(self.group, {k: c * v for k, v in self.coeffs.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        if isinstance(other, GroupAlgebraElement):
            return ga_mul(self, other)
        return self.scale(other)

    def __eq__(self, other):
        return isinstance(other, GroupAlgebraElement) and self.group is other.group and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def is_zero(self):
        return not self.coeffs

    def vector(self):
        v = [Fraction(0)] * self.group.size
        for k, c in self.coeffs.items():
            v[k] = c
        return v

    def render(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            parts.append(f"{c}*d[{self.group.name(k)}]")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return self.render()


def ga_mul(f, g):
    """Convolution: ``delta_x * delta_y = delta_{xy}``."""
    f._check(g)
    G = f.group
    out = {}
    for x, a in f.coeffs.items():
        for y, b in g.coeffs.items():
            xy = G.mul(x, y)
            out[xy] = out.get(xy, 0) + a * b
    return GroupAlgebraElement(G, out)


def ga_antipode(f):
    inv = f.group.inverse
    return GroupAlgebraElement(f.group, {int(inv[k]): v for k, v in f.coeffs.items()})


def _z_element(group):
    gamma = group.gamma
    if not gamma.has_unit:
        raise ValueError("the projectors need a ring with unit")
    z = group.z(gamma.unit)
    if z == group.identity:
        raise ValueError("Z(1) is trivial; the projectors are not defined")
    return z


def z_projectors(group):
    """``P(+-) delta_h = (delta_h +- delta_{Z h}) / 2`` as functions on the algebra."""
    z = _z_element(group)
    zmul = group.mul_vec(z, np.arange(group.size))

    def make(sign):
        def proj(f):
            out = {}
            for k, v in f.coeffs.items():
                out[k] = out.get(k, 0) + HALF * v
                zk = int(zmul[k])
                out[zk] = out.get(zk, 0) + sign * HALF * v
            return GroupAlgebraElement(group, out)
        return proj

    return make(1), make(-1)


def alpha_star(f):
    alpha = grading_automorphism_map(f.group)
    return GroupAlgebraElement(f.group, {int(alpha[k]): v for k, v in f.coeffs.items()})


def super_grading(group):
    """Bases ``(A0, A1)`` of the +1 and -1 eigenspaces of the grading automorphism."""
    alpha = grading_automorphism_map(group)
    even, odd = [], []
    done = set()
    for g in range(group.size):
        if g in done:
            continue
        a = int(alpha[g])
        done.update((g, a))
        d, da = GroupAlgebraElement.delta(group, g), GroupAlgebraElement.delta(group, a)
        if a == g:
            even.append(d)
        else:
            even.append((d + da).scale(HALF))
            odd.append((d - da).scale(HALF))
    return even, odd


def super_degree(f):
    """0 or 1 when ``f`` is homogeneous, ``None`` otherwise."""
    af = alpha_star(f)
    if af == f:
        return 0
    if af == -f:
        return 1
    return None


def quotient_by_z(group):
    """Cosets of ``Z(Gamma)``: ``(coset_of, representatives)``."""
    orbit_min = group.action.min(axis=0)
    reps = np.unique(orbit_min)
    return np.searchsorted(reps, orbit_min), reps


def pi_star(f, coset_of=None):
    """Push forward to the quotient group algebra; returns a coefficient dict on cosets."""
    if coset_of is None:
        coset_of = quotient_by_z(f.group)[0]
    out = {}
    for k, v in f.coeffs.items():
        c = int(coset_of[k])
        out[c] = out.get(c, 0) + v
    return _clean(out)


def _to_dm(rows, ncols):
    if not rows:
        return DomainMatrix.zeros((0, ncols), QQ)
    return DomainMatrix([[QQ(c.numerator, c.denominator) for c in r] for r in rows], (len(rows), ncols), QQ)


def rank(vectors, ncols=None):
    """Exact rank of a list of Fraction vectors (or algebra elements)."""
    rows = [v.vector() if hasattr(v, "vector") else list(v) for v in vectors]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return 0
    return int(_to_dm([[Fraction(x) for x in r] for r in rows], ncols).rank())


def nullspace(rows, ncols):
    """Basis of ``{x : M x = 0}`` as lists of Fractions."""
    dm = _to_dm([[Fraction(x) for x in r] for r in rows], ncols)
    ns = dm.nullspace().to_Matrix()
    out = []
    for i in range(ns.rows):
        out.append([Fraction(int(x.p), int(x.q)) for x in ns.row(i)])
    return out


def _frac(x):
    return Fraction(int(x.numerator), int(x.denominator))


def pi_star_matrix(group):
    coset_of, reps = quotient_by_z(group)
    rows = [[Fraction(0)] * group.size for _ in range(len(reps))]
    for g in range(group.size):
        rows[int(coset_of[g])][g] = Fraction(1)
    return rows


# ---------------------------------------------------------------------------
# the minus ideal versus the Clifford algebra


def _vee(sig):
    return sig if isinstance(sig, VeeGroup) else VeeGroup(sig)


def _ideal_constants(sig, sign):
    G = _vee(sig)
    n = G.sig.n
    plus, minus = z_projectors(G)
    proj = plus if sign > 0 else minus
    basis = [proj(GroupAlgebraElement.delta(G, A << 1)) for A in range(1 << n)]
    signs = np.zeros((1 << n, 1 << n), dtype=np.int64)
    masks = np.zeros((1 << n, 1 << n), dtype=np.int64)
    for A in range(1 << n):
        for B in range(1 << n):
            prod = basis[A] * basis[B]
            C = A ^ B
            if prod == basis[C]:
                signs[A, B] = 1
            elif prod == -basis[C]:
                signs[A, B] = -1
            else:
                raise ArithmeticError(f"product of basis elements {A}, {B} is not +-P(e_{{A^B}})")
            masks[A, B] = C
    return signs, masks


def minus_ideal_structure_constants(sig):
    """``P- delta_{e_A} * P- delta_{e_B} = sign * P- delta_{e_{A^B}}``; returns ``(sign, mask)`` tables."""
    return _ideal_constants(sig, -1)


def plus_ideal_structure_constants(sig):
    return _ideal_constants(sig, +1)


class CliffordElement:
    """Element of the Clifford algebra with ``e_k^2 = t_k`` on the basis ``e_A``.

    ``t`` is a tuple of nonzero scalars (``+1``/``-1`` for Q_{p,q}).
    """

    __slots__ = ("t", "coeffs")

    def __init__(self, t, coeffs=None):
        self.t = tuple(Fraction(x) for x in t)
        self.coeffs = _clean(coeffs or {})

    @classmethod
    def basis(cls, t, A, c=1):
        return cls(t, {int(A): Fraction(c)})

    @classmethod
    def from_signature(cls, sig, A, c=1):
        return cls.basis(clifford_scalars(sig), A, c)

    @property
    def n(self):
        return len(self.t)

    def __add__(self, other):
        if self.t != other.t:
            raise ValueError("different Clifford algebras")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return CliffordElement(self.t, out)

    def __neg__(self):
        return CliffordElement(self.t, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return CliffordElement(self.t, {k: Fraction(c) * v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, CliffordElement):
            return clifford_mul(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        return isinstance(other, CliffordElement) and self.t == other.t and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.t, tuple(sorted(self.coeffs.items()))))

    def render(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            name = VeeElement(0, k).render(self.n)
            parts.append(f"{self.coeffs[k]}*{name}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return self.render()


def clifford_scalars(sig):
    """Flag 1 -> +1, flag Z -> -1."""
    return tuple(Fraction(-1) if v else Fraction(1) for v in sig.t)


def clifford_basis_product(t, A, B):
    """``e_A e_B = (-1)^{m(A,B)} prod_{k in A & B} t_k e_{A^B}``; returns ``(scalar, mask)``."""
    c = Fraction(-1) if inversion_count(A, B) & 1 else Fraction(1)
    for k in mask_indices(A & B):
        c *= t[k - 1]
    return c, A ^ B


def clifford_mul(x, y):
    if x.t != y.t:
        raise ValueError("different Clifford algebras")
    out = {}
    for A, a in x.coeffs.items():
        for B, b in y.coeffs.items():
            c, C = clifford_basis_product(x.t, A, B)
            out[C] = out.get(C, 0) + c * a * b
    return CliffordElement(x.t, out)


def clifford_structure_constants(t):
    """Tables ``(scalar, mask)`` of basis products; scalars as Fractions."""
    n = len(t)
    size = 1 << n
    scal = [[None] * size for _ in range(size)]
    masks = np.zeros((size, size), dtype=np.int64)
    for A in range(size):
        for B in range(size):
            c, C = clifford_basis_product(t, A, B)
            scal[A][B] = c
            masks[A, B] = C
    return scal, masks


def embed_tensor(n_left, A, B):
    """Basis index of ``e_A (x) e_B`` in the algebra on ``n_left + m`` generators."""
    return A | (B << n_left)


def graded_tensor(a, b):
    """``a (x) b`` inside the Clifford algebra of the juxtaposed signature."""
    t = a.t + b.t
    n = a.n
    return CliffordElement(t, {embed_tensor(n, A, B): x * y for A, x in a.coeffs.items() for B, y in b.coeffs.items()})


def graded_tensor_product_rule(t, s, A1, B1, A2, B2):
    """``(e_A1 (x) e_B1)(e_A2 (x) e_B2) = (-1)^{|B1||A2|} e_A1 e_A2 (x) e_B1 e_B2`` as ``(scalar, A, B)``."""
    ca, A = clifford_basis_product(t, A1, A2)
    cb, B = clifford_basis_product(s, B1, B2)
    sign = -1 if (popcount(B1) * popcount(A2)) & 1 else 1
    return sign * ca * cb, A, B


def anchor(roots, x):
    """Map ``Cl(t_1^2, ..., t_n^2) -> Cl(1, ..., 1)``, ``e_A -> (prod_{a in A} t_a) e_A``."""
    roots = tuple(Fraction(r) for r in roots)
    if tuple(r * r for r in roots) != x.t:
        raise ValueError("roots do not square to the source signature")
    out = {}
    for A, c in x.coeffs.items():
        s = Fraction(1)
        for k in mask_indices(A):
            s *= roots[k - 1]
        out[A] = c * s
    return CliffordElement((Fraction(1),) * len(roots), out)


# ---------------------------------------------------------------------------
# characters and central functions


def character(A, B):
    return -1 if popcount(A & B) & 1 else 1


def character_table(n):
    size = 1 << n
    return [[character(A, B) for B in range(size)] for A in range(size)]


def central_function_basis(sig):
    """``E_A+`` for every subset, ``e_0- = delta_1 - delta_Z``, and for odd n ``delta_{e_n} - delta_{Z e_n}``.

    Returned as ``(name, element)`` pairs.
    """
    G = _vee(sig)
    n = G.sig.n
    out = []
    for A in range(1 << n):
        coeffs = {}
        for B in range(1 << n):
            c = Fraction(character(A, B))
            coeffs[B << 1] = c
            coeffs[(B << 1) | 1] = c
        out.append((f"E+[{VeeElement(0, A).render(n)}]", GroupAlgebraElement(G, coeffs)))
    out.append(("e0-", GroupAlgebraElement(G, {0: 1, 1: -1})))
    if n % 2 == 1:
        full = ((1 << n) - 1) << 1
        out.append(("en-", GroupAlgebraElement(G, {full: 1, full | 1: -1})))
    return out


def is_central(f, gens=None):
    G = f.group
    gens = G.generators if gens is None else gens
    for g in gens:
        d = GroupAlgebraElement.delta(G, g)
        if d * f != f * d:
            return False
    return True


def central_basis_report(sig):
    """``(count, rank, all central, class count)`` for the central-function basis."""
    G = _vee(sig)
    basis = [f for _, f in central_function_basis(G)]
    return {
        "count": len(basis),
        "rank": rank(basis, G.size),
        "central": all(is_central(f) for f in basis),
        "classes": class_count(G.sig),
    }


def central_idempotent_scale(sig):
    """The scalar ``c`` with ``E_A+ * E_B+ = c [A = B] E_A+`` for all A, B, or ``None``."""
    G = _vee(sig)
    n = G.sig.n
    Es = [f for _, f in central_function_basis(G)][: 1 << n]
    scale = None
    for A, B in iproduct(range(1 << n), repeat=2):
        prod = Es[A] * Es[B]
        if A != B:
            if not prod.is_zero():
                return None
            continue
        k = next(iter(Es[A].coeffs))
        c = prod.coeffs.get(k, Fraction(0)) / Es[A].coeffs[k]
        if prod != Es[A].scale(c) or (scale is not None and c != scale):
            return None
        scale = c
    return scale


def clifford_center(sig):
    """Basis of the center of the minus ideal, solved exactly inside ``K[G]``."""
    G = _vee(sig)
    n = G.sig.n
    _, minus = z_projectors(G)
    basis = [minus(GroupAlgebraElement.delta(G, A << 1)) for A in range(1 << n)]
    rows = []
    gens = [1 << (k + 1) for k in range(n)]
    # columns: unknown coefficients of the basis; rows: coordinates of [f, delta_g]
    comm = []
    for g in gens:
        d = GroupAlgebraElement.delta(G, g)
        comm.append([(b * d - d * b).vector() for b in basis])
    for cols in comm:
        for r in range(G.size):
            rows.append([cols[j][r] for j in range(len(basis))])
    if not rows:
        rows = [[Fraction(0)] * len(basis)]
    sols = nullspace(rows, len(basis))
    out = []
    for sol in sols:
        f = GroupAlgebraElement.zero(G)
        for c, b in zip(sol, basis):
            if c:
                f = f + b.scale(c)
        out.append(f)
    return out


def clifford_center_dimension(t):
    """Dimension of the center of the Clifford algebra, from the basis rule directly."""
    n = len(t)
    size = 1 << n
    rows = []
    for k in range(n):
        g = 1 << k
        # coordinate C of [x, e_k] for x = sum c_A e_A
        block = [[Fraction(0)] * size for _ in range(size)]
        for A in range(size):
            c1, C1 = clifford_basis_product(t, A, g)
            c2, C2 = clifford_basis_product(t, g, A)
            block[C1][A] += c1
            block[C2][A] -= c2
        rows += block
    if not rows:
        return 1
    return size - rank([r for r in rows], size)


# ---------------------------------------------------------------------------
# exports


def _subset_name(A, n):
    return VeeElement(0, A).render(n)


def constants_rows(sig):
    """Rows ``(A, B, sign, A^B)`` of the Clifford structure constants."""
    t = clifford_scalars(sig)
    n = sig.n
    rows = []
    for A in range(1 << n):
        for B in range(1 << n):
            c, C = clifford_basis_product(t, A, B)
            rows.append((_subset_name(A, n), _subset_name(B, n), int(c), _subset_name(C, n)))
    return rows


def constants_csv(sig):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["A", "B", "sign", "AxorB"])
    w.writerows(constants_rows(sig))
    return buf.getvalue()


def characters_csv(n):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["A"] + [_subset_name(B, n) for B in range(1 << n)])
    for A, row in enumerate(character_table(n)):
        w.writerow([_subset_name(A, n)] + row)
    return buf.getvalue()
