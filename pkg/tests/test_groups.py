"""Group machinery against textbook facts and brute-force recomputation."""

import numpy as np
import pytest

from soclelab.errors import UnsupportedInputError
from soclelab.families import parse_family
from soclelab.groups import (FiniteGroup, central_product, direct_product,
                             find_isomorphism, groups_isomorphic, int_p_part,
                             prime_factors)


def cyclic_table(n):
    i = np.arange(n)
    return (i[:, None] + i[None, :]) % n


def test_int_p_part():
    assert int_p_part(48, 2) == 16
    assert int_p_part(48, 3) == 3
    assert int_p_part(48, 5) == 1


def test_prime_factors():
    assert prime_factors(360) == [2, 3, 5]
    assert prime_factors(1) == []


def test_axioms_reject_nonassociative():
    t = cyclic_table(4)
    t[3, 3] = 1  # break associativity
    with pytest.raises(UnsupportedInputError):
        FiniteGroup(t)


def test_cyclic_basics():
    g = FiniteGroup(cyclic_table(12))
    assert g.order == 12
    assert g.is_abelian()
    assert g.element_order(1) == 12
    assert g.element_order(4) == 3
    assert g.inverse(5) == 7
    assert len(g.conjugacy_classes()) == 12


class TestDihedral4:
    g = parse_family("dihedral(4)")

    def test_invariants(self):
        assert self.g.order == 8
        assert len(self.g.conjugacy_classes()) == 5
        assert self.g.center().size == 2
        assert self.g.derived_subgroup().size == 2

    def test_class_equation(self):
        sizes = sorted(c.size for c in self.g.conjugacy_classes())
        assert sizes == [1, 1, 2, 2, 2]


def test_quaternion_group():
    g = parse_family("q8")
    assert g.order == 8
    assert g.center().size == 2
    der = g.derived_subgroup()
    assert der.size == 2
    assert np.array_equal(der, g.center())
    # one involution only
    assert int((g.element_orders() == 2).sum()) == 1


def test_sym4_derived_series():
    g = parse_family("sym(4)")
    series = [s.size for s in g.derived_series()]
    assert series[:4] == [24, 12, 4, 1]
    assert len(g.conjugacy_classes()) == 5


def test_alt5_simple():
    g = parse_family("alt(5)")
    assert g.order == 60
    assert g.derived_subgroup().size == 60
    assert len(g.conjugacy_classes()) == 5


def test_commutator_and_conj_identities():
    g = parse_family("sym(4)")
    rng = np.random.default_rng(3)
    for _ in range(40):
        a, b, x = rng.integers(0, g.order, size=3)
        ab = g.mul(int(a), int(b))
        # [a,b] = a b a^-1 b^-1
        lhs = g.mul(g.mul(int(a), int(b)),
                    g.mul(g.inverse(int(a)), g.inverse(int(b))))
        assert g.commutator(int(a), int(b)) == lhs
        assert g.conj(int(a), g.conj(int(b), int(x))) == g.conj(ab, int(x))


def test_power_matches_iteration():
    g = parse_family("dicyclic(5)")
    for x in range(g.order):
        acc = 0
        for k in range(1, 2 * g.order):
            acc = g.mul(acc, x)
            assert g.power(x, k) == acc
        assert g.power(x, -1) == g.inverse(x)


def test_subgroup_closure_and_normality():
    g = parse_family("sym(4)")
    # closure of any single 3-cycle has order 3 and is not normal
    three = next(x for x in range(24) if g.element_order(x) == 3)
    sub3 = g.subgroup_closure([three])
    assert sub3.size == 3
    assert not g.is_normal(sub3)
    der2 = g.second_derived()
    assert der2.size == 4
    assert g.is_normal(der2)


def test_quotient_sym4_by_klein():
    g = parse_family("sym(4)")
    qm = g.quotient(g.second_derived())
    assert qm.group.order == 6
    assert not qm.group.is_abelian()
    # projection is a homomorphism
    rng = np.random.default_rng(5)
    for _ in range(30):
        a, b = map(int, rng.integers(0, 24, size=2))
        assert qm.proj[g.mul(a, b)] == qm.group.mul(int(qm.proj[a]),
                                                    int(qm.proj[b]))
    # section lifts back
    for h in range(6):
        assert int(qm.proj[int(qm.section[h])]) == h


def test_quotient_rejects_non_normal():
    g = parse_family("sym(4)")
    three = next(x for x in range(24) if g.element_order(x) == 3)
    with pytest.raises(UnsupportedInputError):
        g.quotient(g.subgroup_closure([three]))


def test_center_and_centralizer():
    g = parse_family("q8")
    z = g.center()
    for x in z:
        assert g.centralizer([int(x)]).size == g.order
    i = next(x for x in range(8) if g.element_order(x) == 4)
    assert g.centralizer([i]).size == 4


def test_sylow_and_hall_sl23():
    g = parse_family("sl2(3)")
    syl = g.sylow_subgroup(2)
    assert syl.size == 8
    assert g.is_normal(syl)
    comp = g.hall_complement(2, sylow=syl)
    assert comp is not None and comp.size == 3
    syl3 = g.sylow_subgroup(3)
    assert syl3.size == 3
    assert not g.is_normal(syl3)


def test_cores_and_residuals():
    g, _, _ = direct_product(parse_family("sl2(3)"), parse_family("cyclic(5)"))
    assert g.p_prime_core(2).size == 5
    assert g.p_core(2).size == 8
    # abelianization C3 x C5 has trivial 2-part, so no proper 2-group quotient
    assert g.p_residual(2).size == 120
    assert g.p_residual(5).size == 24


def test_subgroup_as_group_multiplication():
    g = parse_family("sl2(3)")
    q8, elems = g.subgroup_as_group(g.sylow_subgroup(2))
    assert q8.order == 8
    for a in range(8):
        for b in range(8):
            prod = g.mul(int(elems[a]), int(elems[b]))
            assert int(elems[q8.mul(a, b)]) == prod
    assert groups_isomorphic(q8, parse_family("q8"))


def test_direct_product_embeddings_commute():
    a = parse_family("q8")
    b = parse_family("cyclic(3)")
    g, ea, eb = direct_product(a, b)
    assert g.order == 24
    for x in ea:
        for y in eb:
            assert g.mul(int(x), int(y)) == g.mul(int(y), int(x))


def test_central_product_identifies_centers():
    q8 = parse_family("q8")
    g, ea, eb = central_product(q8, q8)
    assert g.order == 32  # 8 * 8 / 2
    assert g.center().size == 2


def test_isomorphism_search():
    c6a = parse_family("cyclic(6)")
    c6b, _, _ = direct_product(parse_family("cyclic(2)"), parse_family("cyclic(3)"))
    iso = find_isomorphism(c6a, c6b)
    assert iso is not None
    for a in range(6):
        for b in range(6):
            assert iso[c6a.mul(a, b)] == c6b.mul(int(iso[a]), int(iso[b]))
    assert groups_isomorphic(parse_family("dihedral(3)"), parse_family("sym(3)"))
    assert not groups_isomorphic(parse_family("q8"), parse_family("dihedral(4)"))


def test_camina_detection():
    # extraspecial groups are Camina; dihedral(4) is too, dihedral(6) is not
    assert parse_family("q8").is_camina()
    assert parse_family("extraspecial(27,+)").is_camina()
    assert parse_family("dihedral(4)").is_camina()
    assert not parse_family("dihedral(6)").is_camina()


def test_frobenius_detection():
    g = parse_family("agl(1,5)")
    assert g.is_frobenius_with_kernel(g.derived_subgroup())
    s3 = parse_family("sym(3)")
    assert s3.is_frobenius_with_kernel(s3.derived_subgroup())
    d4 = parse_family("dihedral(4)")
    assert not d4.is_frobenius_with_kernel(d4.derived_subgroup())
    # direct factors break the partition condition
    g2, _, _ = direct_product(parse_family("agl(1,5)"), parse_family("cyclic(3)"))
    assert not g2.is_frobenius_with_kernel(g2.derived_subgroup())


def test_fingerprint_separates_and_matches():
    assert parse_family("q8").fingerprint() != parse_family("dihedral(4)").fingerprint()
    a = parse_family("cyclic(6)")
    b, _, _ = direct_product(parse_family("cyclic(2)"), parse_family("cyclic(3)"))
    assert a.fingerprint() == b.fingerprint()
