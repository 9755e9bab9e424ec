"""Center algebra against a dense model of the full group algebra.

Every oracle here works in element coordinates with its own convolution
product, so agreement with the class-coordinate fast path is meaningful.
"""

import itertools

import numpy as np
import pytest

from soclelab.algebra import CenterAlgebra
from soclelab.families import parse_family
from soclelab.fplin import Subspace, kernel_basis
from soclelab.groups import direct_product


def fg_mul(g, u, v, p):
    """Convolution product in FG, element coordinates."""
    out = np.zeros(g.order, dtype=np.int64)
    np.add.at(out, g.table, np.outer(u, v))
    return out % p


def fg_pow(g, u, e, p):
    out = np.zeros(g.order, dtype=np.int64)
    out[0] = 1
    base = u % p
    while e:
        if e & 1:
            out = fg_mul(g, out, base, p)
        base = fg_mul(g, base, base, p)
        e >>= 1
    return out


def left_mul_by_element(g, x, v, p):
    out = np.zeros(g.order, dtype=np.int64)
    out[g.table[x]] = v % p
    return out


def right_mul_by_element(g, x, v, p):
    out = np.zeros(g.order, dtype=np.int64)
    out[g.table[:, x]] = v % p
    return out


def brute_center(g, p):
    """Commutant of the generators, solved as a linear system."""
    n = g.order
    blocks = []
    for t in g.generators():
        lm = np.zeros((n, n), dtype=np.int64)
        rm = np.zeros((n, n), dtype=np.int64)
        for x in range(n):
            lm[g.mul(t, x), x] += 1
            rm[g.mul(x, t), x] += 1
        blocks.append((lm - rm) % p)
    return Subspace(p, n, kernel_basis(np.concatenate(blocks), p))


def module_closure(g, p, vectors):
    """Two-sided FG-submodule generated by the given element vectors."""
    s = Subspace(p, g.order, vectors)
    queue = [np.array(v) for v in s.basis]
    while queue:
        v = queue.pop()
        for x in range(g.order):
            for prod in (left_mul_by_element(g, x, v, p),
                         right_mul_by_element(g, x, v, p)):
                if not s.contains_vector(prod):
                    s = s.sum(Subspace(p, g.order, [prod]))
                    queue.append(prod)
    return s


SMALL = [("cyclic(6)", 2), ("sym(3)", 3), ("dihedral(4)", 2), ("q8", 2),
         ("sl2(3)", 2), ("agl(1,4)", 2), ("cyclic(4)", 2),
         ("metacyclic(7,3,2)", 3), ("dicyclic(3)", 2), ("alt(4)", 2)]


@pytest.mark.parametrize("spec, p", SMALL)
def test_class_sums_span_the_commutant(spec, p):
    g = parse_family(spec)
    alg = CenterAlgebra(g, p)
    class_sums = [alg.expand(alg.class_sum_vec(i)) for i in range(alg.k)]
    assert Subspace(p, g.order, class_sums) == brute_center(g, p)


@pytest.mark.parametrize("spec, p", SMALL)
def test_multiply_matches_convolution(spec, p):
    g = parse_family(spec)
    alg = CenterAlgebra(g, p)
    rng = np.random.default_rng(hash((spec, p)) % 2**32)
    for _ in range(10):
        u = rng.integers(0, p, size=alg.k)
        v = rng.integers(0, p, size=alg.k)
        fast = alg.expand(alg.multiply(u, v))
        slow = fg_mul(g, alg.expand(u), alg.expand(v), p)
        assert np.array_equal(fast, slow)
        assert np.array_equal(alg.multiply(u, v), alg.multiply(v, u))
    assert np.array_equal(alg.multiply(alg.identity_vec(), u) % p, u % p)


@pytest.mark.parametrize("spec, p", [("cyclic(6)", 2), ("sym(3)", 3),
                                     ("dihedral(4)", 2), ("q8", 2),
                                     ("sl2(3)", 2), ("agl(1,4)", 2),
                                     ("cyclic(9)", 3)])
def test_radical_is_the_exact_set_of_nilpotents(spec, p):
    """Enumerate the whole center and classify nilpotency by brute power."""
    g = parse_family(spec)
    alg = CenterAlgebra(g, p)
    rad = alg.jacobson_radical()
    m = 1
    while p ** m < alg.k:
        m += 1
    count = 0
    for coords in itertools.product(range(p), repeat=alg.k):
        full = alg.expand(np.array(coords))
        nil = not fg_pow(g, full, p ** m, p).any()
        assert nil == rad.contains_vector(coords)
        count += nil
    assert count == p ** rad.dim


@pytest.mark.parametrize("spec, p", SMALL)
def test_socle_is_the_brute_annihilator(spec, p):
    g = parse_family(spec)
    alg = CenterAlgebra(g, p)
    rad_full = [alg.expand(b) for b in alg.jacobson_radical().basis]
    cols = [alg.expand(alg.class_sum_vec(i)) for i in range(alg.k)]
    if rad_full:
        rows = []
        for jb in rad_full:
            mat = np.stack([fg_mul(g, c, jb, p) for c in cols], axis=1)
            rows.append(mat)
        brute = Subspace(p, alg.k, kernel_basis(np.concatenate(rows), p))
    else:
        brute = Subspace(p, alg.k, np.eye(alg.k, dtype=np.int64))
    assert brute == alg.socle()
    for s in alg.socle().basis:
        sf = alg.expand(s)
        for jb in rad_full:
            assert not fg_mul(g, sf, jb, p).any()


IDEAL_SAMPLE = SMALL + [("sym(4)", 2), ("sym(4)", 3), ("dihedral(5)", 5),
                        ("agl(1,5)", 5), ("extraspecial(27,+)", 3),
                        ("sl2(3)", 3), ("alt(4)", 3), ("dihedral(6)", 3)]


@pytest.mark.parametrize("spec, p", IDEAL_SAMPLE)
def test_direct_ideal_test_matches_module_closure(spec, p):
    g = parse_family(spec)
    alg = CenterAlgebra(g, p)
    soc_full = [alg.expand(b) for b in alg.socle().basis]
    span = Subspace(p, g.order, soc_full)
    closed = module_closure(g, p, soc_full)
    assert (closed == span) == alg.socle_is_ideal_direct()


@pytest.mark.parametrize("spec, p", IDEAL_SAMPLE)
def test_criterion_matches_brute_augmentation_ideal(spec, p):
    """Membership in the span of all translates of the derived-subgroup sum."""
    g = parse_family(spec)
    alg = CenterAlgebra(g, p)
    der = g.derived_subgroup()
    dplus = np.zeros(g.order, dtype=np.int64)
    dplus[der] = 1
    translates = [right_mul_by_element(g, x, dplus, p) for x in range(g.order)]
    ideal_span = Subspace(p, g.order, translates)
    brute = all(ideal_span.contains_vector(alg.expand(b))
                for b in alg.socle().basis)
    assert brute == alg.socle_is_ideal_criterion()
    for b in alg.socle().basis:
        assert ideal_span.contains_vector(alg.expand(b)) == \
            alg.lies_in_derived_coset_span(b)


def test_verdicts_known_values():
    assert CenterAlgebra(parse_family("sl2(3)"), 2).dims() == \
        {"center": 7, "radical": 6, "socle": 3}
    assert CenterAlgebra(parse_family("cyclic(6)"), 2).dims() == \
        {"center": 6, "radical": 3, "socle": 3}
    assert CenterAlgebra(parse_family("agl(1,9)"), 3).dims() == \
        {"center": 9, "radical": 8, "socle": 8}


def test_semisimple_prime_gives_zero_radical():
    for spec, p in [("sym(3)", 5), ("q8", 3), ("sl2(3)", 5)]:
        alg = CenterAlgebra(parse_family(spec), p)
        d = alg.dims()
        assert d["radical"] == 0
        assert d["socle"] == d["center"]


def test_abelian_socle_always_ideal():
    for spec in ["cyclic(12)", "abelian(2,4)", "elementary(3,2)"]:
        g = parse_family(spec)
        for p in (2, 3):
            assert CenterAlgebra(g, p).socle_ideal_verdict() == (True, True)


def test_surviving_pprime_classes_structure():
    # trivial second derived: every nontrivial class survives at any p
    g = parse_family("agl(1,4)")
    alg = CenterAlgebra(g, 2)
    assert alg.surviving_pprime_classes() == list(range(1, alg.k))
    # SL2(3): the central involution class dies, the four 3-part classes live
    g = parse_family("sl2(3)")
    alg = CenterAlgebra(g, 2)
    ids = alg.surviving_pprime_classes()
    assert len(ids) == 4
    sizes = {alg.classes[i].size for i in ids}
    assert sizes == {4}


def test_socle_coset_blocks_sum():
    g = parse_family("sl2(3)")
    alg = CenterAlgebra(g, 2)
    blocks = alg.socle_coset_decomposition(g.sylow_subgroup(2))
    assert [d for _, d in blocks] == [1, 1, 1]
    assert blocks[0][0] == 0
    g = parse_family("agl(1,8)")
    alg = CenterAlgebra(g, 2)
    blocks = alg.socle_coset_decomposition(g.sylow_subgroup(2))
    assert len(blocks) == 7 and all(d == 1 for _, d in blocks)


def test_push_through_quotient_is_projection():
    g = parse_family("sl2(3)")
    alg = CenterAlgebra(g, 2)
    qm = g.quotient(g.second_derived())
    qalg = CenterAlgebra(qm.group, 2)
    for i in range(alg.k):
        pushed = alg.push_through_quotient(alg.class_sum_vec(i), qm, qalg)
        # projecting element coordinates directly must give the same thing
        full = alg.expand(alg.class_sum_vec(i))
        direct = np.zeros(qm.group.order, dtype=np.int64)
        np.add.at(direct, qm.proj, full)
        assert np.array_equal(qalg.expand(pushed), direct % 2)


def test_identity_and_subset_sum():
    g = parse_family("dihedral(4)")
    alg = CenterAlgebra(g, 2)
    ident = alg.identity_vec()
    assert alg.expand(ident)[0] == 1 and alg.expand(ident).sum() == 1
    der = g.derived_subgroup()
    v = alg.subset_sum_vec(der)
    full = alg.expand(v)
    assert set(np.flatnonzero(full)) == set(int(x) for x in der)
