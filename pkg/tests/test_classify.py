import itertools

import numpy as np
import pytest

from conftest import load_fixture
from gradedgroups.classify import (NormalForm, building_block, fingerprint, iso_oracle, normal_form, parse_label,
                                   periodic_table, realize, reduction_paths, render_csv, render_text,
                                   reorder_signature, simplify, split_embedding, split_off_rank2, table_to_json,
                                   ungraded_product)
from gradedgroups.clifford_group import Signature, SignatureError, VeeGroup
from gradedgroups.graded import GradedError, gamma_01
from gradedgroups.gamma import make_z_mod_m
from oracles import brute_hom_extension


def test_normal_form_labels():
    assert NormalForm(0, "C2").label == "C_2"
    assert NormalForm(3, "C4").label == "D^3 C_4"
    assert NormalForm(1, "QV").label == "D Q C_2^2"
    assert NormalForm(3, "C4").short == "D^3C"
    assert NormalForm(2, "C2") == NormalForm(2, None)
    assert NormalForm(0, None).tail == "C2"
    with pytest.raises(ValueError):
        NormalForm(0, "X")
    with pytest.raises(ValueError):
        NormalForm(-1, None)


@pytest.mark.parametrize("text, expected", [
    ("D^3 C_4", NormalForm(3, "C4")),
    ("D^3C", NormalForm(3, "C4")),
    ("DQV", NormalForm(1, "QV")),
    ("QC_2^2", NormalForm(0, "QV")),
    ("Q^2", NormalForm(2, None)),
    ("Q C_4", NormalForm(1, "C4")),
    ("C_2", NormalForm(0, "C2")),
    ("D^4", NormalForm(4, None)),
])
def test_parse_label(text, expected):
    assert parse_label(text) == expected


def test_parse_label_errors():
    with pytest.raises(ValueError):
        parse_label("D X")
    with pytest.raises(ValueError):
        simplify({"C4": 1, "V": 1})


@pytest.mark.parametrize("p, q", [(p, q) for p in range(9) for q in range(9) if p + q <= 12])
def test_rewriting_is_confluent(p, q):
    assert len(reduction_paths(p, q)) == 1
    assert normal_form(p, q).order == 2 ** (p + q + 1)


def test_normal_form_rejects_negative():
    with pytest.raises(SignatureError):
        normal_form(-1, 0)


def test_classification_rows_from_fixture():
    rows = load_fixture("periodic_table.json")["classification"]
    for n in range(9):
        assert normal_form(n, 0) == parse_label(rows["Q_n"][n])
        assert normal_form(0, n) == parse_label(rows["Q_0n"][n])


def test_algebra_annotation():
    assert normal_form(0, 0).algebra() == "K"
    assert normal_form(1, 0).algebra() == "K^2"
    assert normal_form(0, 2).algebra() == "H_K"
    assert normal_form(2, 1).algebra() == "M_2(K)^2"
    assert normal_form(3, 0).algebra() == "M_2(C_K)"


@pytest.mark.parametrize("token, order", [("D", 8), ("Q", 8), ("C4", 4), ("V", 4), ("C2", 2)])
def test_building_blocks(token, order):
    assert building_block(token).size == order


def test_ungraded_product_needs_f2():
    G = gamma_01(make_z_mod_m(3))
    with pytest.raises(GradedError):
        ungraded_product(G, G)


@pytest.mark.parametrize("p, q", [(p, q) for p in range(5) for q in range(5) if p + q <= 4])
def test_realized_normal_form_is_isomorphic(p, q):
    nf = normal_form(p, q)
    G = VeeGroup(Signature.from_pq(p, q))
    H = realize(nf)
    ok, phi = iso_oracle(G, H)
    assert ok
    assert brute_hom_extension(G.table, 0, list(range(G.size)), phi.tolist(), H.table, H.identity) is not None


def test_distinct_normal_forms_are_not_isomorphic():
    forms = sorted({normal_form(p, q) for p in range(5) for q in range(5) if p + q == 4})
    groups = [realize(nf) for nf in forms]
    for a, b in itertools.combinations(groups, 2):
        assert iso_oracle(a, b)[0] is False


def test_fingerprint_values():
    fp = fingerprint(VeeGroup(Signature.from_pq(0, 2)))
    assert fp.order == 8
    assert fp.order_profile == ((1, 1), (2, 1), (4, 6))
    assert fp.center_order == 2
    assert fp.abelianization == (2, 2)
    assert fingerprint(VeeGroup(Signature.from_pq(0, 1))).abelianization == (4,)


def test_oracle_rejects_large_groups():
    G = VeeGroup(Signature.from_pq(9, 0))
    with pytest.raises(ValueError):
        iso_oracle(G, G)


@pytest.mark.parametrize("sig", [Signature(t) for n in (3, 4) for t in itertools.product((0, 1), repeat=n)], ids=str)
def test_split_off_rank2(sig):
    left, right = split_off_rank2(sig)
    G = VeeGroup(sig)
    H = ungraded_product(VeeGroup(left), VeeGroup(right))
    assert iso_oracle(G, H)[0]
    imgs = split_embedding(sig)
    b = imgs[3:]
    for k, tk in enumerate(right.t):
        assert G.mul(b[k], b[k]) == tk
        for s in imgs[1:3]:
            assert G.mul(b[k], s) == G.mul(s, b[k])


def test_split_needs_three_generators():
    with pytest.raises(SignatureError):
        split_off_rank2(Signature.from_pq(1, 1))


def test_reorder_signature_preserves_isomorphism_type():
    sig = Signature.parse("1,Z,Z,1")
    for perm in itertools.permutations(range(4)):
        assert reorder_signature(sig, perm).pq == sig.pq
    assert reorder_signature(sig, split=1) == Signature.parse("Z,Z,1,1")
    with pytest.raises(ValueError):
        reorder_signature(sig, (0, 0, 1, 2))
    with pytest.raises(ValueError):
        reorder_signature(sig)


def test_periodic_table_matches_fixture():
    fix = load_fixture("periodic_table.json")
    rows = periodic_table(8)
    assert [r["order"] for r in rows] == fix["cardinality"]
    for row, expected in zip(rows, fix["triangle"]):
        assert [nf for _, _, nf in row["entries"]] == [parse_label(x) for x in expected]
        assert [nf.short for _, _, nf in row["entries"]] == [parse_label(x).short for x in expected]


def test_periodic_renderings():
    rows = periodic_table(2)
    text = render_text(rows)
    assert text.splitlines()[1].split() == ["0", "C_2", "2"]
    csv_text = render_csv(rows, algebra=True)
    assert csv_text.splitlines()[0] == "p,q,normal_form,order,algebra"
    js = table_to_json(rows)
    assert [e["short"] for e in js["rows"][2]["entries"]] == ["D", "D", "Q"]
    with pytest.raises(ValueError):
        periodic_table(-1)


def _times(nf, extra):
    counts = {"D": nf.d_count + extra.get("D", 0), "Q": extra.get("Q", 0), "C4": 0, "V": 0}
    for tok in nf.factors():
        if tok in ("Q", "C4", "V"):
            counts[tok] += 1
    return simplify(counts)


@pytest.mark.parametrize("n", range(5))
def test_four_step_periodicity(n):
    assert normal_form(n + 4, 0) == _times(normal_form(n, 0), {"D": 1, "Q": 1})
    assert normal_form(0, n + 4) == _times(normal_form(0, n), {"D": 1, "Q": 1})
    assert normal_form(n + 1, 1) == _times(normal_form(n, 0), {"D": 1})


def test_automorphism_induced_by_isomorphism_is_consistent():
    G = VeeGroup(Signature.from_pq(1, 1))
    H = realize(normal_form(1, 1))
    ok, phi = iso_oracle(G, H)
    assert ok and len(set(phi.tolist())) == G.size
    np.testing.assert_array_equal(phi[G.table], H.table[phi[:, None], phi[None, :]])
