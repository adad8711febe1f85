"""Hot inner loops: subset arithmetic for Vee groups and Cayley-table scans.

Every kernel has a numba implementation (``_nb_*``) and a numpy
implementation (``_np_*``); the public name is bound to one of them at import
time according to :data:`gradedgroups._accel.USE_NUMBA`. Both variants take and
return plain integer arrays so they can be compared against each other.

Vee group elements are encoded as ``(A << 1) | z`` where ``A`` is the subset
bitmask (bit ``i-1`` is generator ``i``) and ``z`` the exponent of ``Z``.
"""

import numpy as np

from ._accel import USE_NUMBA, njit

__all__ = [
    "parity_table",
    "gamma_parity",
    "gamma_table",
    "vee_mul_vec",
    "vee_mul_table",
    "cocycle_defects",
    "conjugation_defects",
    "element_orders",
    "associativity_defects",
    "conjugacy_reps",
    "commuting_mask",
]


# ---------------------------------------------------------------------------
# numba kernels


@njit
def _nb_popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit
def _nb_gamma_bit(a, b):
    # parity of #{(i, j) in a x b : i > j}
    s = 0
    while b:
        low = b & -b
        s += _nb_popcount(a & ~((low << 1) - 1))
        b ^= low
    return s & 1


@njit
def _nb_parity_table(n):
    size = 1 << n
    out = np.empty(size, dtype=np.uint8)
    for a in range(size):
        out[a] = _nb_popcount(a) & 1
    return out


@njit
def _nb_gamma_parity(a, b):
    out = np.empty(a.shape[0], dtype=np.uint8)
    for i in range(a.shape[0]):
        out[i] = _nb_gamma_bit(a[i], b[i])
    return out


@njit
def _nb_gamma_table(n):
    size = 1 << n
    out = np.empty((size, size), dtype=np.uint8)
    for a in range(size):
        for b in range(size):
            out[a, b] = _nb_gamma_bit(a, b)
    return out


@njit
def _nb_vee_mul_vec(x, y, tmask):
    out = np.empty(x.shape[0], dtype=np.int64)
    for i in range(x.shape[0]):
        a = x[i] >> 1
        b = y[i] >> 1
        z = (x[i] ^ y[i] ^ _nb_gamma_bit(a, b) ^ _nb_popcount(a & b & tmask)) & 1
        out[i] = ((a ^ b) << 1) | z
    return out


@njit
def _nb_vee_mul_table(n, tmask):
    size = 1 << n
    out = np.empty((2 * size, 2 * size), dtype=np.int64)
    for a in range(size):
        for b in range(size):
            z = (_nb_gamma_bit(a, b) ^ _nb_popcount(a & b & tmask)) & 1
            c = (a ^ b) << 1
            for za in range(2):
                for zb in range(2):
                    out[2 * a + za, 2 * b + zb] = c | (z ^ za ^ zb)
    return out


@njit
def _nb_cocycle_defects(n, tmask):
    size = 1 << n
    g = _nb_gamma_table(n)
    absolute = 0
    relative = 0
    for a in range(size):
        for b in range(size):
            ab = a ^ b
            gab = g[a, b]
            tab = _nb_popcount(a & b & tmask) & 1
            for c in range(size):
                if gab ^ g[ab, c] ^ g[a, b ^ c] ^ g[b, c]:
                    absolute += 1
                lhs = tab ^ (_nb_popcount(ab & c & tmask) & 1)
                rhs = (_nb_popcount(a & (b ^ c) & tmask) ^ _nb_popcount(b & c & tmask)) & 1
                if lhs != rhs:
                    relative += 1
    return absolute, relative


@njit
def _nb_vee_mul1(x, y, tmask):
    a = x >> 1
    b = y >> 1
    z = (x ^ y ^ _nb_gamma_bit(a, b) ^ _nb_popcount(a & b & tmask)) & 1
    return ((a ^ b) << 1) | z


@njit
def _nb_conjugation_defects(n, tmask):
    size = 1 << n
    bad = 0
    for a in range(size):
        x = a << 1
        # inverse of e_A is Z^{q(A)} e_A with q(A) the Z-part of e_A^2
        q = _nb_vee_mul1(x, x, tmask) & 1
        xinv = x | q
        na = _nb_popcount(a)
        for b in range(size):
            y = b << 1
            got = _nb_vee_mul1(_nb_vee_mul1(x, y, tmask), xinv, tmask)
            expo = (na * _nb_popcount(b) - _nb_popcount(a & b)) & 1
            if got != (y | expo):
                bad += 1
    return bad


@njit
def _nb_element_orders(table, identity):
    n = table.shape[0]
    out = np.empty(n, dtype=np.int64)
    for x in range(n):
        k = 1
        cur = x
        while cur != identity:
            cur = table[cur, x]
            k += 1
            if k > n:
                k = -1
                break
        out[x] = k
    return out


@njit
def _nb_associativity_defects(table, gens):
    n = table.shape[0]
    bad = 0
    for s in gens:
        for a in range(n):
            as_ = table[a, s]
            for b in range(n):
                if table[as_, b] != table[a, table[s, b]]:
                    bad += 1
    return bad


@njit
def _nb_conjugacy_reps(table, inverse):
    n = table.shape[0]
    out = np.empty(n, dtype=np.int64)
    for x in range(n):
        best = x
        for g in range(n):
            c = table[table[g, x], inverse[g]]
            if c < best:
                best = c
        out[x] = best
    return out


@njit
def _nb_commuting_mask(table, gens):
    n = table.shape[0]
    out = np.ones(n, dtype=np.bool_)
    for x in range(n):
        for s in gens:
            if table[x, s] != table[s, x]:
                out[x] = False
                break
    return out


# ---------------------------------------------------------------------------
# numpy kernels


def _np_parity_table(n):
    return (np.bitwise_count(np.arange(1 << n, dtype=np.int64)) & 1).astype(np.uint8)


def _np_gamma_parity(a, b):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    s = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
    top = int(max(np.max(b, initial=0), 0)).bit_length()
    for j in range(top):
        s += ((b >> j) & 1) * np.bitwise_count(a >> (j + 1))
    return (s & 1).astype(np.uint8)


def _np_gamma_table(n):
    idx = np.arange(1 << n, dtype=np.int64)
    return _np_gamma_parity(idx[:, None], idx[None, :])


def _np_vee_mul_vec(x, y, tmask):
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    a = x >> 1
    b = y >> 1
    z = (x ^ y ^ _np_gamma_parity(a, b) ^ np.bitwise_count(a & b & tmask)) & 1
    return ((a ^ b) << 1) | z


def _np_vee_mul_table(n, tmask):
    idx = np.arange(2 << n, dtype=np.int64)
    return _np_vee_mul_vec(idx[:, None], idx[None, :], tmask)


def _np_cocycle_defects(n, tmask):
    size = 1 << n
    g = _np_gamma_table(n).astype(np.int64)
    idx = np.arange(size, dtype=np.int64)
    b = idx[:, None]
    c = idx[None, :]
    absolute = 0
    relative = 0
    for a in range(size):
        ab = a ^ b
        lhs = g[a, b] ^ g[ab, c]
        rhs = g[a, b ^ c] ^ g[b, c]
        absolute += int(np.count_nonzero(lhs != rhs))
        tl = (np.bitwise_count(a & b & tmask) ^ np.bitwise_count(ab & c & tmask)) & 1
        tr = (np.bitwise_count(a & (b ^ c) & tmask) ^ np.bitwise_count(b & c & tmask)) & 1
        relative += int(np.count_nonzero(tl != tr))
    return absolute, relative


def _np_conjugation_defects(n, tmask):
    idx = np.arange(1 << n, dtype=np.int64)
    x = (idx << 1)[:, None]
    y = (idx << 1)[None, :]
    q = _np_vee_mul_vec(x, x, tmask) & 1
    got = _np_vee_mul_vec(_np_vee_mul_vec(x, y, tmask), x | q, tmask)
    expo = (np.bitwise_count(idx)[:, None] * np.bitwise_count(idx)[None, :]
            - np.bitwise_count(idx[:, None] & idx[None, :])) & 1
    return int(np.count_nonzero(got != (y | expo)))


def _np_element_orders(table, identity):
    n = table.shape[0]
    x = np.arange(n)
    out = np.full(n, -1, dtype=np.int64)
    cur = x.copy()
    for k in range(1, n + 1):
        hit = (cur == identity) & (out < 0)
        out[hit] = k
        if not np.any(out < 0):
            break
        cur = table[cur, x]
    return out


def _np_associativity_defects(table, gens):
    bad = 0
    for s in gens:
        lhs = table[table[:, s]][:, :]
        rhs = table[:, table[s, :]]
        bad += int(np.count_nonzero(lhs != rhs))
    return bad


def _np_conjugacy_reps(table, inverse):
    conj = table[table, inverse[:, None]]  # conj[g, x] = g x g^-1
    return conj.min(axis=0).astype(np.int64)


def _np_commuting_mask(table, gens):
    gens = np.asarray(gens, dtype=np.int64)
    return np.all(table[:, gens] == table[gens, :].T, axis=1)


# ---------------------------------------------------------------------------
# dispatch

NUMBA_KERNELS = {
    "parity_table": _nb_parity_table,
    "gamma_parity": _nb_gamma_parity,
    "gamma_table": _nb_gamma_table,
    "vee_mul_vec": _nb_vee_mul_vec,
    "vee_mul_table": _nb_vee_mul_table,
    "cocycle_defects": _nb_cocycle_defects,
    "conjugation_defects": _nb_conjugation_defects,
    "element_orders": _nb_element_orders,
    "associativity_defects": _nb_associativity_defects,
    "conjugacy_reps": _nb_conjugacy_reps,
    "commuting_mask": _nb_commuting_mask,
}

NUMPY_KERNELS = {
    "parity_table": _np_parity_table,
    "gamma_parity": _np_gamma_parity,
    "gamma_table": _np_gamma_table,
    "vee_mul_vec": _np_vee_mul_vec,
    "vee_mul_table": _np_vee_mul_table,
    "cocycle_defects": _np_cocycle_defects,
    "conjugation_defects": _np_conjugation_defects,
    "element_orders": _np_element_orders,
    "associativity_defects": _np_associativity_defects,
    "conjugacy_reps": _np_conjugacy_reps,
    "commuting_mask": _np_commuting_mask,
}

_ACTIVE = NUMBA_KERNELS if USE_NUMBA else NUMPY_KERNELS


def _array_args(name):
    # numba wants contiguous int64 arrays; the numpy path accepts anything
    impl = _ACTIVE[name]

    def call(*args):
        conv = [np.ascontiguousarray(a, dtype=np.int64) if isinstance(a, (np.ndarray, list, tuple)) else a
                for a in args]
        return impl(*conv)

    call.__name__ = name
    call.__doc__ = impl.__doc__
    return call


parity_table = _ACTIVE["parity_table"]
gamma_table = _ACTIVE["gamma_table"]
vee_mul_table = _ACTIVE["vee_mul_table"]
cocycle_defects = _ACTIVE["cocycle_defects"]
conjugation_defects = _ACTIVE["conjugation_defects"]


def gamma_parity(a, b):
    """Inversion parity ``|{(i, j) in A x B : i > j}| mod 2`` for arrays of masks."""
    a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
    shape = a.shape
    out = _ACTIVE["gamma_parity"](np.ascontiguousarray(a.ravel()), np.ascontiguousarray(b.ravel()))
    return np.asarray(out).reshape(shape)


def vee_mul_vec(x, y, tmask):
    """Elementwise Vee-group product of encoded elements ``x`` and ``y``."""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64))
    shape = x.shape
    out = _ACTIVE["vee_mul_vec"](np.ascontiguousarray(x.ravel()), np.ascontiguousarray(y.ravel()), int(tmask))
    return np.asarray(out).reshape(shape)


element_orders = _array_args("element_orders")
associativity_defects = _array_args("associativity_defects")
conjugacy_reps = _array_args("conjugacy_reps")
commuting_mask = _array_args("commuting_mask")
