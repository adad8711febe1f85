"""Homomorphism extension and isomorphism search on Cayley tables.

A map is fixed by the images of a generating set. Generators are assigned one
at a time; after each assignment the map is extended over the subgroup they
generate, and any edge ``phi(h s) != phi(h) phi(s)`` prunes the branch.
Candidate images must share an element invariant (order, class size, number
of square roots, centrality), which keeps the search small for 2-groups.
"""

import numpy as np

from . import kernels


def element_invariants(group):
    t = group.table
    orders = group.orders
    reps = kernels.conjugacy_reps(t, group.inverse)
    class_size = np.bincount(reps, minlength=group.size)[reps]
    roots = np.bincount(np.diagonal(t), minlength=group.size)
    return np.stack([orders, class_size, roots], axis=1)


def _invariant_keys(group):
    inv = element_invariants(group)
    return [tuple(int(v) for v in row) for row in inv]


def greedy_generators(group, keys=None):
    """Generators picked to be rare under the invariants, which narrows candidates."""
    if keys is None:
        keys = _invariant_keys(group)
    freq = {}
    for k in keys:
        freq[k] = freq.get(k, 0) + 1
    order = sorted(range(group.size), key=lambda g: (freq[keys[g]], -keys[g][0], g))
    gens = []
    seen = np.zeros(group.size, dtype=bool)
    seen[group.identity] = True
    for g in order:
        if seen[g]:
            continue
        gens.append(g)
        seen = group._closure_mask(gens)
        if seen.all():
            break
    return gens


def _extend(tg, th, gens, images, phi, used, k, injective):
    """Extend ``phi`` over the subgroup generated by ``gens[:k+1]``. Mutates; returns success."""
    queue = [int(x) for x in np.nonzero(phi >= 0)[0]]
    head = 0
    active = gens[:k + 1]
    while head < len(queue):
        h = queue[head]
        head += 1
        ph = phi[h]
        for s, ps in zip(active, images[:k + 1]):
            y = tg[h, s]
            py = th[ph, ps]
            if phi[y] >= 0:
                if phi[y] != py:
                    return False
            else:
                if injective and used[py]:
                    return False
                phi[y] = py
                used[py] = True
                queue.append(y)
    return True


def hom_from_images(G, gens, H, images, injective=False):
    """The homomorphism ``G -> H`` with ``gens[i] -> images[i]``, or ``None`` if no such map exists."""
    tg, th = G.table, H.table
    phi = np.full(G.size, -1, dtype=np.int64)
    used = np.zeros(H.size, dtype=bool)
    phi[G.identity] = H.identity
    used[H.identity] = True
    if not _extend(tg, th, list(gens), list(images), phi, used, len(gens) - 1, injective):
        return None
    if np.any(phi < 0):
        return None
    return phi


def _search(G, H, count_all, limit=None):
    if G.size != H.size:
        return 0, None
    kg, kh = _invariant_keys(G), _invariant_keys(H)
    if sorted(kg) != sorted(kh):
        return 0, None
    gens = greedy_generators(G, kg)
    cands = [[c for c in range(H.size) if kh[c] == kg[g]] for g in gens]
    tg, th = G.table, H.table
    found = [0, None]

    def rec(k, phi, used, images):
        if limit is not None and found[0] >= limit:
            return
        if k == len(gens):
            found[0] += 1
            if found[1] is None:
                found[1] = phi.copy()
            return
        for c in cands[k]:
            if used[c]:
                continue
            p2, u2 = phi.copy(), used.copy()
            imgs = images + [c]
            if _extend(tg, th, gens, imgs, p2, u2, k, True):
                rec(k + 1, p2, u2, imgs)
                if not count_all and found[0]:
                    return

    phi = np.full(G.size, -1, dtype=np.int64)
    used = np.zeros(H.size, dtype=bool)
    phi[G.identity] = H.identity
    used[H.identity] = True
    rec(0, phi, used, [])
    return found[0], found[1]


def find_isomorphism(G, H):
    """An isomorphism ``G -> H`` as an index array, or ``None``."""
    return _search(G, H, count_all=False)[1]


def count_isomorphisms(G, H):
    return _search(G, H, count_all=True)[0]


def is_homomorphism(G, H, phi):
    phi = np.asarray(phi)
    return bool(np.array_equal(phi[G.table], H.table[phi[:, None], phi[None, :]]))
