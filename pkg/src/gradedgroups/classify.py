"""Isomorphism classes of Q_{p,q} as central products of small 2-groups.

Normal forms are words over ``D`` (dihedral of order 8), ``Q`` (quaternion),
``C`` (cyclic of order 4) and ``V`` (Klein four), multiplied with the central
product ``x_Z`` that identifies the two central ``Z`` elements. ``C_2`` is the
unit of that product.
"""

import csv
import io
import json
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._backtrack import find_isomorphism
from .clifford_group import Signature, VeeGroup, SignatureError
from .graded import GradedError, ProductGroup, as_table_group

TAILS = ("C2", "V", "C4", "Q", "QV", None)

_LONG = {"C2": "C_2", "V": "C_2^2", "C4": "C_4", "Q": "Q", "QV": "Q C_2^2", None: ""}
_SHORT = {"C2": "C_2", "V": "V", "C4": "C", "Q": "Q", "QV": "QV", None: ""}
_TAIL_ORDER = {"C2": 2, "V": 4, "C4": 4, "Q": 8, "QV": 16, None: 2}
_BLOCKS = {"D": (2, 0), "Q": (0, 2), "C4": (0, 1), "V": (1, 0), "C2": (0, 0)}


@dataclass(frozen=True, order=True)
class NormalForm:
    d_count: int
    tail: object = None

    def __post_init__(self):
        if self.tail not in TAILS:
            raise ValueError(f"unknown tail {self.tail!r}")
        if self.d_count < 0:
            raise ValueError("negative D count")
        if self.tail == "C2" and self.d_count:
            object.__setattr__(self, "tail", None)
        if self.tail is None and self.d_count == 0:
            object.__setattr__(self, "tail", "C2")

    @property
    def order(self):
        return 2 ** (2 * self.d_count + 1) * _TAIL_ORDER[self.tail] // 2

    def _d_part(self):
        if self.d_count == 0:
            return ""
        return "D" if self.d_count == 1 else f"D^{self.d_count}"

    @property
    def label(self):
        parts = [p for p in (self._d_part(), _LONG[self.tail]) if p]
        return " ".join(parts)

    @property
    def short(self):
        return self._d_part() + _SHORT[self.tail]

    def factors(self):
        """Building blocks as a list of tokens, D's first."""
        out = ["D"] * self.d_count
        if self.tail == "QV":
            out += ["Q", "V"]
        elif self.tail is not None and not (self.tail == "C2" and out):
            out.append(self.tail)
        return out

    def algebra(self):
        """Matrix-algebra name under the block translation (annotation only)."""
        k = self.d_count
        base = {"C2": "K", None: "K", "V": "K", "C4": "C_K", "Q": "H_K", "QV": "H_K"}[self.tail]
        name = base if k == 0 else f"M_{2 ** k}({base})"
        if self.tail in ("V", "QV"):
            name += "^2"
        return name

    def __str__(self):
        return self.label


_TOKEN = re.compile(r"(C_2\^2|C_4|C_2|D|Q|V|C)(?:\^(\d+))?")


def parse_label(text):
    """Parse labels such as ``D^3 C_4``, ``D^3C``, ``DQV``, ``QC_2^2`` or ``C_2``."""
    s = re.sub(r"\s+", "", text)
    counts = {"D": 0, "Q": 0, "C4": 0, "V": 0, "C2": 0}
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            raise ValueError(f"cannot parse group label {text!r}")
        tok, exp = m.group(1), int(m.group(2) or 1)
        key = {"C_2^2": "V", "C_4": "C4", "C": "C4", "C_2": "C2"}.get(tok, tok)
        counts[key] += exp
        pos = m.end()
    return simplify(counts)


def simplify(counts):
    """Apply ``Q^2 -> D^2``, ``Q C_4 -> D C_4`` and drop unit factors."""
    c = dict(counts)
    d, q = c.get("D", 0), c.get("Q", 0)
    d += 2 * (q // 2)
    q %= 2
    c4, v = c.get("C4", 0), c.get("V", 0)
    if q and c4:
        q, d = 0, d + 1
    if c4 + v > 1:
        raise ValueError("more than one abelian block is outside the normal-form alphabet")
    if q and v:
        tail = "QV"
    elif q:
        tail = "Q"
    elif c4:
        tail = "C4"
    elif v:
        tail = "V"
    else:
        tail = None
    return NormalForm(d, tail)


def _reduction_moves(p, q):
    """One-step reductions ``(token, (p', q'))`` available at ``Q_{p,q}``."""
    moves = []
    if p >= 2:
        moves.append(("D", (q, p - 2)))
    if p >= 1 and q >= 1:
        moves.append(("D", (p - 1, q - 1)))
    if q >= 2:
        moves.append(("Q", (q - 2, p)))
    return moves


_BASE = {(0, 0): "C2", (1, 0): "V", (0, 1): "C4"}


@lru_cache(maxsize=None)
def _raw_words(p, q):
    """Every multiset of blocks reachable by some reduction sequence, as sorted tuples."""
    if (p, q) in _BASE:
        return frozenset([(_BASE[(p, q)],)])
    out = set()
    for tok, (p2, q2) in _reduction_moves(p, q):
        for w in _raw_words(p2, q2):
            out.add(tuple(sorted(w + (tok,))))
    return frozenset(out)


def _counts(word):
    c = {"D": 0, "Q": 0, "C4": 0, "V": 0, "C2": 0}
    for t in word:
        c[t] += 1
    return c


def reduction_paths(p, q):
    """Normal forms obtained from all reduction orders (a single one if confluent)."""
    return sorted({simplify(_counts(w)) for w in _raw_words(p, q)})


def normal_form(p, q):
    if p < 0 or q < 0:
        raise SignatureError("p and q must be non-negative")
    forms = reduction_paths(p, q)
    if len(forms) != 1:
        raise RuntimeError(f"rewrite system is not confluent at ({p}, {q}): {forms}")
    return forms[0]


# ---------------------------------------------------------------------------
# realisations and products


def building_block(token):
    return VeeGroup(Signature.from_pq(*_BLOCKS[token]))


def ungraded_product(g1, g2):
    """Central product over the Z's: ``(x1, Z x2) ~ (Z x1, x2)``, degrees added."""
    if g1.gamma.size != 2 or g2.gamma.size != 2:
        raise GradedError("the central product over Z needs F2-graded groups")
    return as_table_group(ProductGroup(g1, g2, twisted=False))


def realize(nf):
    """A concrete group for ``nf`` built as an iterated central product of blocks."""
    tokens = nf.factors() or ["C2"]
    acc = building_block(tokens[0])
    for tok in tokens[1:]:
        acc = ungraded_product(acc, building_block(tok))
    acc.label = nf.label
    return acc


# ---------------------------------------------------------------------------
# fingerprints and the isomorphism oracle


@dataclass(frozen=True)
class Fingerprint:
    order: int
    order_profile: tuple  # ((order, count), ...)
    center_order: int
    abelianization: tuple  # elementary divisors of G/[G,G]


def _subgroup_closure(table, identity, gens):
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for h in frontier:
            for s in gens:
                y = int(table[h, s])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return np.array(sorted(seen), dtype=np.int64)


def _abelian_invariants(table, identity):
    """Elementary divisors of a finite abelian group given by its table."""
    n = len(table)
    out = []
    for p in _prime_factors(n):
        counts = []  # counts[k] = #{x : x^(p^k) = 1}
        k = 0
        while True:
            c = int(np.count_nonzero(_power_all(table, identity, p ** k) == identity))
            if counts and c == counts[-1]:
                break
            counts.append(c)
            k += 1
        # number of cyclic factors of order >= p^k is log_p(counts[k]/counts[k-1])
        logs = [round(np.log(c) / np.log(p)) for c in counts]
        ge = [logs[k] - logs[k - 1] for k in range(1, len(logs))]
        for k in range(len(ge)):
            exact = ge[k] - (ge[k + 1] if k + 1 < len(ge) else 0)
            out += [p ** (k + 1)] * exact
    return tuple(sorted(out))


def _power_all(table, identity, e):
    n = len(table)
    result = np.full(n, identity, dtype=np.int64)
    base = np.arange(n, dtype=np.int64)
    while e:
        if e & 1:
            result = table[result, base]
        base = table[base, base]
        e >>= 1
    return result


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def fingerprint(group):
    t = group.table
    e = group.identity
    orders = group.orders
    vals, counts = np.unique(orders, return_counts=True)
    profile = tuple((int(v), int(c)) for v, c in zip(vals, counts))
    central = np.all(t == t.T, axis=1)
    inv = group.inverse
    comms = np.unique(t[t, inv[t.T]])  # x y (y x)^-1
    derived = _subgroup_closure(t, e, comms.tolist())
    coset = t[:, derived].min(axis=1)
    reps = np.unique(coset)
    pos = np.searchsorted(reps, coset)
    qt = pos[t[reps[:, None], reps[None, :]]]
    ab = _abelian_invariants(qt, int(pos[e]))
    return Fingerprint(group.size, profile, int(np.count_nonzero(central)), ab)


def iso_oracle(g1, g2):
    """Decide ``g1 ~ g2`` as abstract groups; returns ``(bool, mapping or None)``."""
    if g1.size != g2.size:
        return False, None
    if g1.size > 512:
        raise ValueError("the isomorphism oracle is limited to order 512")
    if fingerprint(g1) != fingerprint(g2):
        return False, None
    phi = find_isomorphism(g1, g2)
    return phi is not None, phi


# ---------------------------------------------------------------------------
# signatures


def split_off_rank2(sig):
    """``Q(t) ~ Q(t1, t2) x_Z Q(Z t1 t2 t3, ..., Z t1 t2 tn)``."""
    if sig.n < 3:
        raise SignatureError("splitting needs n >= 3")
    t1, t2 = sig.t[0], sig.t[1]
    return Signature(sig.t[:2]), Signature(tuple(1 ^ t1 ^ t2 ^ tk for tk in sig.t[2:]))


def split_embedding(sig):
    """Images in Q(t) of the generators ``Z, e_1, e_2`` and ``b_k = e_1 e_2 e_k``."""
    from .clifford_group import VeeElement, vee_mul
    e12 = vee_mul(sig, VeeElement(0, 1), VeeElement(0, 2))
    imgs = [1, VeeElement(0, 1).code, VeeElement(0, 2).code]
    for k in range(3, sig.n + 1):
        imgs.append(vee_mul(sig, e12, VeeElement(0, 1 << (k - 1))).code)
    return imgs


def reorder_signature(sig, perm=None, split=None):
    """Reordered signature: permute flags by ``perm`` (0-based) or swap blocks ``t + s -> s + t`` at ``split``."""
    if split is not None:
        return Signature(sig.t[split:] + sig.t[:split])
    if perm is None:
        raise ValueError("give a permutation or a split point")
    if sorted(perm) != list(range(sig.n)):
        raise ValueError("not a permutation")
    return Signature(tuple(sig.t[i] for i in perm))


# ---------------------------------------------------------------------------
# periodic table


def periodic_table(max_n):
    """Rows ``n = 0..max_n``; row ``n`` lists ``(p, q, NormalForm)`` for ``p - q = n, n-2, ..., -n``."""
    if max_n < 0:
        raise ValueError("max_n must be non-negative")
    rows = []
    for n in range(max_n + 1):
        entries = []
        for diff in range(n, -n - 1, -2):
            p = (n + diff) // 2
            q = n - p
            entries.append((p, q, normal_form(p, q)))
        rows.append({"n": n, "order": 2 ** (n + 1), "entries": entries})
    return rows


def render_text(rows, algebra=False, short=True):
    max_n = rows[-1]["n"] if rows else 0
    cells = []
    for row in rows:
        names = [(nf.algebra() if algebra else (nf.short if short else nf.label)) for _, _, nf in row["entries"]]
        cells.append(names)
    width = max((len(c) for r in cells for c in r), default=1) + 1
    header = "n\\p-q " + "".join(f"{d:>{width}}" for d in range(max_n, -max_n - 1, -1)) + "  order"
    lines = [header]
    for row, names in zip(rows, cells):
        n = row["n"]
        slots = [""] * (2 * max_n + 1)
        for (p, q, _), name in zip(row["entries"], names):
            slots[max_n - (p - q)] = name
        lines.append(f"{n:>6}" + "".join(f"{s:>{width}}" for s in slots) + f"  {row['order']}")
    return "\n".join(lines) + "\n"


def render_csv(rows, algebra=False):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    head = ["p", "q", "normal_form", "order"] + (["algebra"] if algebra else [])
    w.writerow(head)
    for row in rows:
        for p, q, nf in row["entries"]:
            w.writerow([p, q, nf.label, nf.order] + ([nf.algebra()] if algebra else []))
    return buf.getvalue()


def table_to_json(rows, algebra=False):
    out = {"rows": []}
    for row in rows:
        ents = []
        for p, q, nf in row["entries"]:
            e = {"p": p, "q": q, "normal_form": nf.label, "short": nf.short, "order": nf.order}
            if algebra:
                e["algebra"] = nf.algebra()
            ents.append(e)
        out["rows"].append({"n": row["n"], "order": row["order"], "entries": ents})
    return out


def render_json(rows, algebra=False):
    return json.dumps(table_to_json(rows, algebra), indent=2, sort_keys=True) + "\n"
