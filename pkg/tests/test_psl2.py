import random
from collections import Counter
from math import gcd

import pytest

from invgen.gf import gf_for_q
from invgen.psl2 import (
    ClassLabel,
    canon,
    enumerate_psl2,
    identity_mat,
    inventory,
    make,
    psl2_class_of,
    psl2_inv,
    psl2_mul,
    psl2_order,
)

ORACLE_QS = [4, 5, 7, 8, 9, 11, 13]


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


# ---------------------------------------------------------------------------
# group arithmetic
# ---------------------------------------------------------------------------

def test_make_rejects_bad_determinant():
    ctx = gf_for_q(5)
    with pytest.raises(ValueError):
        make(ctx, 1, 0, 0, 2)


def test_group_laws_q5():
    ctx = gf_for_q(5)
    elems = list(enumerate_psl2(ctx))
    ident = identity_mat(ctx)
    rng = random.Random(5)
    for x in elems:
        assert psl2_mul(ctx, x, psl2_inv(ctx, x)) == ident
        assert psl2_mul(ctx, x, ident) == x
    for _ in range(300):
        x, y, z = (rng.choice(elems) for _ in range(3))
        assert psl2_mul(ctx, psl2_mul(ctx, x, y), z) == psl2_mul(ctx, x, psl2_mul(ctx, y, z))


def test_canonical_form_identifies_negatives():
    ctx = gf_for_q(5)
    for m in enumerate_psl2(ctx):
        neg = tuple(ctx.neg(x) for x in m)
        assert canon(ctx, neg) == m


def test_order_examples():
    ctx5 = gf_for_q(5)
    assert psl2_order(ctx5, identity_mat(ctx5)) == 1
    assert psl2_order(ctx5, make(ctx5, 1, 1, 0, 1)) == 5
    ctx7 = gf_for_q(7)
    # order 4 in SL(2,7), the square is -I, so order 2 in PSL
    assert psl2_order(ctx7, make(ctx7, 0, 1, 6, 0)) == 2


@pytest.mark.parametrize("q", ORACLE_QS)
def test_orders_divide_p_or_torus_orders(q):
    ctx = gf_for_q(q)
    d = 2 if q % 2 == 1 else 1
    for m in enumerate_psl2(ctx):
        n = psl2_order(ctx, m)
        assert n == 1 or ctx.p % n == 0 or (q - 1) // d % n == 0 or (q + 1) // d % n == 0


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

def test_unipotent_square_class_q7():
    ctx = gf_for_q(7)
    u1 = psl2_class_of(ctx, make(ctx, 1, 1, 0, 1))
    u2 = psl2_class_of(ctx, make(ctx, 1, 2, 0, 1))  # 2 = 3^2 mod 7
    u3 = psl2_class_of(ctx, make(ctx, 1, 3, 0, 1))  # 3 is a non-square mod 7
    assert u1 == u2 == ClassLabel("unip", sq=True)
    assert u3 == ClassLabel("unip", sq=False)


def test_order3_is_nonsplit_q5():
    ctx = gf_for_q(5)
    elem = next(m for m in enumerate_psl2(ctx) if psl2_order(ctx, m) == 3)
    assert psl2_class_of(ctx, elem).kind == "nonsplit"


@pytest.mark.parametrize("q", ORACLE_QS + [25, 31])
def test_class_of_constant_on_classes(q):
    ctx = gf_for_q(q)
    elems = list(enumerate_psl2(ctx))
    rng = random.Random(q)
    for _ in range(200):
        x = rng.choice(elems)
        g = rng.choice(elems)
        conj = psl2_mul(ctx, psl2_mul(ctx, g, x), psl2_inv(ctx, g))
        assert psl2_class_of(ctx, conj) == psl2_class_of(ctx, x)


def test_class_of_order_consistent():
    for q in ORACLE_QS:
        ctx = gf_for_q(q)
        inv = inventory(ctx)
        for m in enumerate_psl2(ctx):
            lab = psl2_class_of(ctx, m)
            assert inv.order_of[lab] == psl2_order(ctx, m)


# ---------------------------------------------------------------------------
# inventory
# ---------------------------------------------------------------------------

def test_inventory_q7():
    inv = inventory(gf_for_q(7))
    assert len(inv) == 6  # (7 + 8 - 3) / 2
    kinds = Counter(e.label.kind for e in inv)
    assert kinds == Counter({"unip": 2, "id": 1, "inv": 1, "split": 1, "nonsplit": 1})
    assert inv.order_of[ClassLabel("split", 1)] == 3
    assert {e.order for e in inv} == {1, 2, 3, 4, 7}


def test_inventory_q9():
    inv = inventory(gf_for_q(9))
    assert len(inv) == 7
    orders = sorted(e.order for e in inv)
    assert orders == [1, 2, 3, 3, 4, 5, 5]
    split = [e for e in inv if e.label.kind == "split"]
    nonsplit = [e for e in inv if e.label.kind == "nonsplit"]
    assert [e.order for e in split] == [4]
    assert [e.order for e in nonsplit] == [5, 5]


def test_inventory_q4_is_a5():
    # d = 1 gives (4 + 4 - 3) / 1 = 5 classes: 1, 2, 3, 5a, 5b
    inv = inventory(gf_for_q(4))
    assert len(inv) == 5
    assert sorted(e.order for e in inv) == [1, 2, 3, 5, 5]


@pytest.mark.parametrize("q,size", [(5, 60), (7, 168), (9, 360)])
def test_enumeration_counts(q, size):
    ctx = gf_for_q(q)
    elems = list(enumerate_psl2(ctx))
    assert len(elems) == size
    assert len(set(elems)) == size


def test_enumeration_cap():
    with pytest.raises(ValueError):
        list(enumerate_psl2(gf_for_q(37)))


@pytest.mark.parametrize("q", ORACLE_QS + [16, 17, 19, 23, 25, 27, 29, 31])
def test_class_sizes_sum_to_group_order(q):
    inv = inventory(gf_for_q(q))
    assert sum(e.size for e in inv) == inv.group_order()


@pytest.mark.parametrize("q", ORACLE_QS)
def test_enumerated_sizes_match_formulas(q):
    ctx = gf_for_q(q)
    inv = inventory(ctx)
    counts = Counter(psl2_class_of(ctx, m) for m in enumerate_psl2(ctx))
    assert counts == Counter({e.label: e.size for e in inv})


@pytest.mark.parametrize("q", ORACLE_QS + [16, 17, 19, 23, 25, 27, 29, 31])
def test_phi_over_2_labels_per_order(q):
    inv = inventory(gf_for_q(q))
    d = 2 if q % 2 == 1 else 1
    by_order = Counter(e.order for e in inv
                       if e.label.kind in ("split", "nonsplit"))
    for n in ((q - 1) // d, (q + 1) // d):
        for ell in range(3, n + 1):
            if n % ell == 0:
                assert by_order[ell] == euler_phi(ell) // 2, (q, ell)


@pytest.mark.parametrize("q", [5, 7, 9, 11, 13])
def test_involution_count(q):
    ctx = gf_for_q(q)
    eps = 1 if q % 4 == 1 else -1
    count = sum(1 for m in enumerate_psl2(ctx) if psl2_order(ctx, m) == 2)
    assert count == q * (q + eps) // 2


@pytest.mark.parametrize("q", ORACLE_QS)
def test_class_meets_cyclic_subgroup_in_inverse_pair(q):
    """x^S intersected with <x> is exactly {x, x^-1} for semisimple orders >= 3.

    The hypothesis is l >= 3 dividing (q +- 1)/d; for unipotent classes of
    order p >= 3 the intersection is the square-exponent powers instead.
    """
    ctx = gf_for_q(q)
    by_label: dict = {}
    for m in enumerate_psl2(ctx):
        by_label.setdefault(psl2_class_of(ctx, m), []).append(m)
    inv = inventory(ctx)
    for entry in inv:
        if entry.order < 3 or entry.label.kind not in ("split", "nonsplit"):
            continue
        x = by_label[entry.label][0]
        cyc = []
        acc = x
        while acc != identity_mat(ctx):
            cyc.append(acc)
            acc = psl2_mul(ctx, acc, x)
        same_class = {m for m in cyc if psl2_class_of(ctx, m) == entry.label}
        assert same_class == {x, psl2_inv(ctx, x)}, (q, entry.label)


def test_inventory_rejects_small_q():
    with pytest.raises(ValueError):
        inventory(gf_for_q(3))


def test_json_label_forms():
    inv = inventory(gf_for_q(7))
    rows = inv.to_json()
    assert rows[0] == {"label": "id", "order": 1, "size": 1}
    labels = [r["label"] for r in rows]
    assert labels == ["id", "inv", "unip:sq", "unip:nsq", "split:t=1", "nonsplit:t=3"]
