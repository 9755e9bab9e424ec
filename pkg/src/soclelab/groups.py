"""Finite groups as complete multiplication tables.

Elements are integers 0..n-1 and 0 is the identity. Everything is table
driven, so any construction (permutations, matrices, products, quotients)
is normalized to the same representation. Determinism rule used throughout:
ties are broken by smallest element index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, UnsupportedInputError

ASSOC_FULL_LIMIT = 512
ASSOC_SAMPLES = 200_000
ISO_ORDER_LIMIT = 512


def int_p_part(n: int, p: int) -> int:
    k = 1
    while n % p == 0:
        n //= p
        k *= p
    return k


class FiniteGroup:
    def __init__(self, table, name: str | None = None, labels=None, check: bool = True):
        t = np.ascontiguousarray(np.asarray(table, dtype=np.int32))
        if t.ndim != 2 or t.shape[0] != t.shape[1]:
            raise UnsupportedInputError("multiplication table must be square")
        n = t.shape[0]
        if n == 0:
            raise UnsupportedInputError("empty table")
        if t.min() < 0 or t.max() >= n:
            raise UnsupportedInputError("table entries out of range")
        self.table = t
        self.order = n
        self.name = name or f"group_of_order_{n}"
        self.labels = list(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise UnsupportedInputError("label count mismatch")
        self._memo: dict = {}
        self.inv = self._build_inverses(check)
        if check:
            self._check_axioms()
        self.table.flags.writeable = False
        self.inv.flags.writeable = False

    # -- validation ----------------------------------------------------

    def _build_inverses(self, check: bool) -> np.ndarray:
        t, n = self.table, self.order
        if check:
            ar = np.arange(n, dtype=np.int32)
            if not np.array_equal(t[0], ar) or not np.array_equal(t[:, 0], ar):
                raise UnsupportedInputError("element 0 is not a two-sided identity")
            if not np.array_equal(np.sort(t, axis=1), np.broadcast_to(ar, t.shape)):
                raise UnsupportedInputError("a row is not a permutation")
            if not np.array_equal(np.sort(t, axis=0), np.broadcast_to(ar[:, None], t.shape)):
                raise UnsupportedInputError("a column is not a permutation")
        inv = np.argmin(t, axis=1).astype(np.int32)  # unique 0 per row
        if check and not (t[inv, np.arange(n)] == 0).all():
            raise UnsupportedInputError("left and right inverses differ")
        return inv

    def _check_axioms(self):
        t, n = self.table, self.order
        if n <= ASSOC_FULL_LIMIT:
            for a in range(n):
                if not np.array_equal(t[t[a]], t[a][t]):
                    raise UnsupportedInputError(f"associativity fails at element {a}")
        else:
            rng = np.random.default_rng(0xC0FFEE)
            a, b, c = rng.integers(0, n, size=(3, ASSOC_SAMPLES))
            if not np.array_equal(t[t[a, b], c], t[a, t[b, c]]):
                raise UnsupportedInputError("associativity fails (sampled)")

    # -- elementary operations ------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inverse(self, a: int) -> int:
        return int(self.inv[a])

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return int(self.table[self.table[g, x], self.inv[g]])

    def commutator(self, a: int, b: int) -> int:
        """a b a^-1 b^-1."""
        return int(self.table[self.table[a, b], self.table[self.inv[a], self.inv[b]]])

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = int(self.inv[x]), -k
        acc, base = 0, int(x)
        while k:
            if k & 1:
                acc = int(self.table[acc, base])
            base = int(self.table[base, base])
            k >>= 1
        return acc

    def element_orders(self) -> np.ndarray:
        if "orders" not in self._memo:
            n = self.order
            out = np.zeros(n, dtype=np.int64)
            out[0] = 1
            cur = np.arange(n)
            k = 1
            while (out == 0).any():
                k += 1
                cur = self.table[cur, np.arange(n)]
                hit = (cur == 0) & (out == 0)
                out[hit] = k
            out.flags.writeable = False
            self._memo["orders"] = out
        return self._memo["orders"]

    def element_order(self, x: int) -> int:
        return int(self.element_orders()[x])

    def exponent_factor(self, x: int, p: int) -> tuple[int, int]:
        """(p-part, p'-part) of the order of x."""
        o = self.element_order(x)
        pa = int_p_part(o, p)
        return pa, o // pa

    def element_p_part(self, x: int, p: int) -> int:
        pa, m = self.exponent_factor(x, p)
        if pa == 1:
            return 0
        return self.power(x, m * pow(m, -1, pa))

    def element_p_prime_part(self, x: int, p: int) -> int:
        pa, m = self.exponent_factor(x, p)
        if m == 1:
            return 0
        return self.power(x, pa * pow(pa, -1, m))

    # -- generation and closure ------------------------------------------

    def subgroup_closure(self, gens) -> np.ndarray:
        """Sorted elements of the subgroup generated by gens."""
        n = self.order
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        gl = sorted({int(g) for g in gens} - {0})
        frontier = [0]
        t = self.table
        while frontier:
            new = []
            for x in frontier:
                row = t[x]
                for g in gl:
                    y = int(row[g])
                    if not seen[y]:
                        seen[y] = True
                        new.append(y)
            frontier = new
        return np.flatnonzero(seen)

    def generators(self) -> list[int]:
        if "gens" not in self._memo:
            gens: list[int] = []
            cl = np.array([0])
            n = self.order
            while cl.size < n:
                mask = np.zeros(n, dtype=bool)
                mask[cl] = True
                g = int(np.flatnonzero(~mask)[0])
                gens.append(g)
                cl = self.subgroup_closure(gens)
            self._memo["gens"] = gens
        return list(self._memo["gens"])

    def sub_generators(self, elems) -> list[int]:
        """Greedy small generating set of a subgroup given by its elements."""
        elems = np.asarray(elems)
        if elems.size == 1:
            return []
        inside = set(int(e) for e in elems)
        gens: list[int] = []
        cl = np.array([0])
        while cl.size < elems.size:
            have = set(int(c) for c in cl)
            g = min(inside - have)
            gens.append(g)
            cl = self.subgroup_closure(gens)
            if not set(int(c) for c in cl) <= inside:
                raise UnsupportedInputError("element set is not a subgroup")
        return gens

    def normal_closure(self, seed, conjugators=None) -> np.ndarray:
        """Smallest subgroup containing seed, closed under the conjugators."""
        if conjugators is None:
            conjugators = self.generators()
        gset = sorted({int(s) for s in seed} - {0})
        s = self.subgroup_closure(gset)
        t, inv = self.table, self.inv
        while True:
            mask = np.zeros(self.order, dtype=bool)
            mask[s] = True
            added = set()
            for g in conjugators:
                cs = t[t[g, s], inv[g]]
                fresh = cs[~mask[cs]]
                for y in fresh:
                    added.add(int(y))
            if not added:
                return s
            gset = sorted(set(gset) | added)
            s = self.subgroup_closure(gset)

    def subgroup(self, elems) -> "Subgroup":
        elems = np.unique(np.asarray(elems, dtype=np.int64))
        mask = np.zeros(self.order, dtype=bool)
        mask[elems] = True
        if not mask[0]:
            raise UnsupportedInputError("subgroup must contain the identity")
        prods = self.table[np.ix_(elems, elems)]
        if not mask[prods].all():
            raise UnsupportedInputError("element set is not closed under the product")
        return Subgroup(self, elems)

    # -- conjugacy -------------------------------------------------------

    def conjugation_perm(self, g: int) -> np.ndarray:
        return self.table[self.table[g], self.inv[g]]

    def conjugacy_classes(self) -> list["ConjClass"]:
        if "classes" not in self._memo:
            n = self.order
            perms = [self.conjugation_perm(g) for g in self.generators()]
            cls_of = np.full(n, -1, dtype=np.int64)
            raw: list[list[int]] = []
            for x in range(n):
                if cls_of[x] >= 0:
                    continue
                idx = len(raw)
                orbit = [x]
                cls_of[x] = idx
                qi = 0
                while qi < len(orbit):
                    u = orbit[qi]
                    qi += 1
                    for pm in perms:
                        v = int(pm[u])
                        if cls_of[v] < 0:
                            cls_of[v] = idx
                            orbit.append(v)
                raw.append(sorted(orbit))
            order_key = sorted(range(len(raw)), key=lambda i: (len(raw[i]), raw[i][0]))
            remap = np.empty(len(raw), dtype=np.int64)
            classes = []
            for new_i, old_i in enumerate(order_key):
                remap[old_i] = new_i
                elems = np.array(raw[old_i], dtype=np.int64)
                elems.flags.writeable = False
                classes.append(ConjClass(rep=int(elems[0]), elems=elems))
            cls_of = remap[cls_of]
            cls_of.flags.writeable = False
            self._memo["classes"] = (classes, cls_of)
        return self._memo["classes"][0]

    def class_index_of(self) -> np.ndarray:
        self.conjugacy_classes()
        return self._memo["classes"][1]

    # -- distinguished subgroups -----------------------------------------

    def center(self) -> np.ndarray:
        if "center" not in self._memo:
            mask = (self.table == self.table.T).all(axis=1)
            self._memo["center"] = np.flatnonzero(mask)
        return self._memo["center"]

    def centralizer(self, elems, within=None) -> np.ndarray:
        elems = np.atleast_1d(np.asarray(elems, dtype=np.int64))
        a = self.table[:, elems]
        b = self.table[elems, :].T
        mask = (a == b).all(axis=1)
        out = np.flatnonzero(mask)
        if within is not None:
            wmask = np.zeros(self.order, dtype=bool)
            wmask[np.asarray(within)] = True
            out = out[wmask[out]]
        return out

    def normalizer(self, elems) -> np.ndarray:
        elems = np.asarray(elems, dtype=np.int64)
        mask = np.zeros(self.order, dtype=bool)
        mask[elems] = True
        t, inv = self.table, self.inv
        keep = [g for g in range(self.order) if mask[t[t[g, elems], inv[g]]].all()]
        return np.array(keep, dtype=np.int64)

    def derived_subgroup(self) -> np.ndarray:
        if "derived" not in self._memo:
            gens = self.generators()
            comms = {self.commutator(a, b) for a in gens for b in gens}
            self._memo["derived"] = self.normal_closure(comms)
        return self._memo["derived"]

    def sub_derived(self, elems) -> np.ndarray:
        gens = self.sub_generators(elems)
        comms = {self.commutator(a, b) for a in gens for b in gens}
        return self.normal_closure(comms, conjugators=gens)

    def second_derived(self) -> np.ndarray:
        if "second_derived" not in self._memo:
            self._memo["second_derived"] = self.sub_derived(self.derived_subgroup())
        return self._memo["second_derived"]

    def derived_series(self) -> list[np.ndarray]:
        series = [np.arange(self.order, dtype=np.int64)]
        while True:
            nxt = self.sub_derived(series[-1])
            if nxt.size == series[-1].size:
                break
            series.append(nxt)
            if nxt.size == 1:
                break
        return series

    def sub_center(self, elems) -> np.ndarray:
        return self.centralizer(elems, within=elems)

    def sub_frattini_p(self, elems) -> np.ndarray:
        """Frattini subgroup of a p-subgroup: generated by p-th powers and commutators."""
        elems = np.asarray(elems)
        orders = self.element_orders()[elems]
        primes = {q for o in map(int, orders) for q in _prime_factors(o)}
        if len(primes) > 1:
            raise UnsupportedInputError("not a p-group")
        if not primes:
            return np.array([0], dtype=np.int64)
        p = primes.pop()
        gens = self.sub_generators(elems)
        seed = {self.power(g, p) for g in gens}
        seed |= {self.commutator(a, b) for a in gens for b in gens}
        return self.normal_closure(seed, conjugators=gens)

    # -- Sylow and Hall ----------------------------------------------------

    def sylow_subgroup(self, p: int) -> np.ndarray:
        key = ("sylow", p)
        if key not in self._memo:
            pk = int_p_part(self.order, p)
            if pk == 1:
                self._memo[key] = np.array([0], dtype=np.int64)
                return self._memo[key]
            orders = self.element_orders()
            # seed with the p-part of an element of maximal p-part order
            best, best_ord = 0, 1
            for x in range(self.order):
                op = int_p_part(int(orders[x]), p)
                if op > best_ord:
                    best, best_ord = x, op
            s = self.subgroup_closure([self.element_p_part(best, p)])
            while s.size < pk:
                nr = self.normalizer(s)
                mask = np.zeros(self.order, dtype=bool)
                mask[s] = True
                cand = None
                for y in map(int, nr):
                    if mask[y]:
                        continue
                    if int_p_part(int(orders[y]), p) != orders[y]:
                        continue  # p-elements only keep the extension a p-group
                    if mask[self.power(y, p)]:
                        cand = y
                        break
                if cand is None:
                    raise ConsistencyError("Sylow ascent found no extension")
                s = self.subgroup_closure(list(s) + [cand])
            self._memo[key] = s
        return self._memo[key]

    def hall_complement(self, p: int, sylow=None) -> np.ndarray | None:
        """Subgroup of order |G| / |Sylow_p|, or None if the search finds none.

        Exhaustive when the Sylow subgroup is normal (complement then exists).
        """
        key = ("hall", p)
        if key in self._memo:
            return self._memo[key]
        if sylow is None:
            sylow = self.sylow_subgroup(p)
        m = self.order // sylow.size
        if m == 1:
            self._memo[key] = np.array([0], dtype=np.int64)
            return self._memo[key]
        orders = self.element_orders()
        pprime = [x for x in range(1, self.order) if int(orders[x]) % p != 0]
        # try large-order elements first; cyclic complements are common
        pprime.sort(key=lambda x: (-int(orders[x]), x))
        seen: set[bytes] = set()

        def extend(cur: np.ndarray) -> np.ndarray | None:
            if cur.size == m:
                return cur
            mask = np.zeros(self.order, dtype=bool)
            mask[cur] = True
            for y in pprime:
                if mask[y]:
                    continue
                new = self.subgroup_closure(list(cur) + [y])
                if new.size % p == 0 or m % new.size:
                    continue
                sig = new.tobytes()
                if sig in seen:
                    continue
                seen.add(sig)
                got = extend(new)
                if got is not None:
                    return got
            return None

        out = extend(np.array([0], dtype=np.int64))
        self._memo[key] = out
        return out

    # -- cores and residuals ----------------------------------------------

    def _core(self, p: int, want_p_group: bool) -> np.ndarray:
        orders = self.element_orders()

        def good(x: int) -> bool:
            o = int(orders[x])
            return (o == int_p_part(o, p)) if want_p_group else (o % p != 0)

        acc = np.array([0], dtype=np.int64)
        gset: set[int] = set()
        mask = np.zeros(self.order, dtype=bool)
        mask[0] = True
        for c in self.conjugacy_classes():
            r = c.rep
            if mask[r] or not good(r):
                continue
            nc = self.normal_closure([r])
            if all(good(int(x)) for x in nc):
                gset |= {int(x) for x in nc}
                acc = self.subgroup_closure(sorted(gset))
                if not all(good(int(x)) for x in acc):
                    raise ConsistencyError("core join left the element-order envelope")
                mask = np.zeros(self.order, dtype=bool)
                mask[acc] = True
        return acc

    def p_core(self, p: int) -> np.ndarray:
        """Largest normal p-subgroup."""
        return self._core(p, want_p_group=True)

    def p_prime_core(self, p: int) -> np.ndarray:
        """Largest normal subgroup of order coprime to p."""
        return self._core(p, want_p_group=False)

    def p_residual(self, p: int) -> np.ndarray:
        """Smallest normal subgroup with p-group quotient: closure of all p'-elements."""
        orders = self.element_orders()
        seed = [x for x in range(self.order) if int(orders[x]) % p != 0]
        return self.subgroup_closure(seed)

    def p_prime_residual(self, p: int) -> np.ndarray:
        orders = self.element_orders()
        seed = [x for x in range(self.order)
                if int(orders[x]) == int_p_part(int(orders[x]), p)]
        return self.subgroup_closure(seed)

    # -- quotients ---------------------------------------------------------

    def is_normal(self, elems) -> bool:
        elems = np.asarray(elems)
        mask = np.zeros(self.order, dtype=bool)
        mask[elems] = True
        t, inv = self.table, self.inv
        return all(mask[t[t[g, elems], inv[g]]].all() for g in self.generators())

    def quotient(self, kernel_elems) -> "QuotientMap":
        k = np.unique(np.asarray(kernel_elems, dtype=np.int64))
        self.subgroup(k)
        if not self.is_normal(k):
            raise UnsupportedInputError("quotient by a non-normal subgroup")
        coset_min = self.table[:, k].min(axis=1)
        reps = np.unique(coset_min)
        if reps.size * k.size != self.order:
            raise ConsistencyError("coset bookkeeping failed")
        proj = np.searchsorted(reps, coset_min).astype(np.int64)
        qtable = proj[self.table[np.ix_(reps, reps)]]
        labels = None
        if self.labels is not None:
            labels = [self.labels[int(r)] + "*" for r in reps]
        q = FiniteGroup(qtable, name=f"{self.name}_mod_{k.size}", labels=labels)
        proj.flags.writeable = False
        reps.flags.writeable = False
        return QuotientMap(parent=self, kernel=k, group=q, proj=proj, section=reps)

    def subgroup_as_group(self, elems, name: str | None = None):
        """Reindexed copy of a subgroup. Returns (group, parent_elements)."""
        elems = np.unique(np.asarray(elems, dtype=np.int64))
        self.subgroup(elems)
        sub_table = np.searchsorted(elems, self.table[np.ix_(elems, elems)])
        labels = None
        if self.labels is not None:
            labels = [self.labels[int(e)] for e in elems]
        g = FiniteGroup(sub_table, name=name or f"{self.name}_sub{elems.size}",
                        labels=labels, check=False)
        return g, elems

    # -- predicates ----------------------------------------------------------

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def is_camina(self) -> bool:
        """[g] = g G' for every g outside G'."""
        der = self.derived_subgroup()
        mask = np.zeros(self.order, dtype=bool)
        mask[der] = True
        classes = self.conjugacy_classes()
        cls_of = self.class_index_of()
        for x in range(self.order):
            if mask[x]:
                continue
            cls = classes[int(cls_of[x])].elems
            coset = np.sort(self.table[x, der])
            if cls.size != coset.size or not np.array_equal(cls, coset):
                return False
        return True

    def is_frobenius_with_kernel(self, kernel_elems) -> bool:
        k = np.unique(np.asarray(kernel_elems, dtype=np.int64))
        if k.size <= 1 or k.size == self.order or not self.is_normal(k):
            return False
        kmask = np.zeros(self.order, dtype=bool)
        kmask[k] = True
        for x in map(int, k):
            if x == 0:
                continue
            cz = self.centralizer(x)
            if not kmask[cz].all():
                return False
        return True

    def fingerprint(self) -> tuple:
        if "fingerprint" not in self._memo:
            orders = self.element_orders()
            hist = tuple(sorted(((int(o), int(c)) for o, c in
                                 zip(*np.unique(orders, return_counts=True)))))
            sizes = tuple(sorted(c.elems.size for c in self.conjugacy_classes()))
            series = tuple(int(s.size) for s in self.derived_series())
            self._memo["fingerprint"] = (
                self.order, sizes, hist, series, int(self.center().size))
        return self._memo["fingerprint"]

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


@dataclass(frozen=True, eq=False)
class ConjClass:
    rep: int
    elems: np.ndarray

    @property
    def size(self) -> int:
        return int(self.elems.size)


class Subgroup:
    """Subgroup of a FiniteGroup given by its sorted element array."""

    __slots__ = ("parent", "elems", "_mask")

    def __init__(self, parent: FiniteGroup, elems: np.ndarray):
        self.parent = parent
        e = np.unique(np.asarray(elems, dtype=np.int64))
        e.flags.writeable = False
        self.elems = e
        m = np.zeros(parent.order, dtype=bool)
        m[e] = True
        m.flags.writeable = False
        self._mask = m

    @property
    def order(self) -> int:
        return int(self.elems.size)

    def contains(self, x: int) -> bool:
        return bool(self._mask[x])

    @property
    def mask(self) -> np.ndarray:
        return self._mask

    def is_normal(self) -> bool:
        return self.parent.is_normal(self.elems)

    def as_group(self, name: str | None = None) -> FiniteGroup:
        return self.parent.subgroup_as_group(self.elems, name=name)[0]

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.parent.name})"


@dataclass(frozen=True, eq=False)
class QuotientMap:
    parent: FiniteGroup
    kernel: np.ndarray
    group: FiniteGroup
    proj: np.ndarray       # parent element -> quotient element
    section: np.ndarray    # quotient element -> smallest parent preimage

    def image_of_set(self, elems) -> np.ndarray:
        return np.unique(self.proj[np.asarray(elems, dtype=np.int64)])

    def preimage_of_set(self, qelems) -> np.ndarray:
        qmask = np.zeros(self.group.order, dtype=bool)
        qmask[np.asarray(qelems, dtype=np.int64)] = True
        return np.flatnonzero(qmask[self.proj])


def _prime_factors(n: int) -> set[int]:
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def prime_factors(n: int) -> list[int]:
    return sorted(_prime_factors(n))


# -- homomorphisms and isomorphism search ---------------------------------


def hom_from_images(src: FiniteGroup, gens: list[int], dst: FiniteGroup,
                    imgs: list[int]) -> dict[int, int] | None:
    """Extend gens -> imgs to a homomorphism on <gens>, or None on conflict."""
    fmap = {0: 0}
    order = [0]
    qi = 0
    ts, td = src.table, dst.table
    while qi < len(order):
        u = order[qi]
        qi += 1
        fu = fmap[u]
        for g, fg in zip(gens, imgs):
            v = int(ts[u, g])
            fv = int(td[fu, fg])
            known = fmap.get(v)
            if known is None:
                fmap[v] = fv
                order.append(v)
            elif known != fv:
                return None
    return fmap


def _element_invariants(g: FiniteGroup) -> list[tuple]:
    orders = g.element_orders()
    cls_of = g.class_index_of()
    classes = g.conjugacy_classes()
    sizes = np.array([classes[int(c)].size for c in cls_of])
    sq = g.table[np.arange(g.order), np.arange(g.order)]
    return [
        (int(orders[x]), int(sizes[x]), int(sizes[sq[x]]))
        for x in range(g.order)
    ]


def find_isomorphism(a: FiniteGroup, b: FiniteGroup) -> dict[int, int] | None:
    """Explicit isomorphism a -> b, or None. Exact only up to ISO_ORDER_LIMIT."""
    if a.order != b.order:
        return None
    if a.order == 1:
        return {0: 0}
    if a.fingerprint() != b.fingerprint():
        return None
    if a.order > ISO_ORDER_LIMIT:
        raise UnsupportedInputError("exact isomorphism search capped at order 512")
    gens = a.generators()
    inv_a = _element_invariants(a)
    inv_b = _element_invariants(b)
    buckets: dict[tuple, list[int]] = {}
    for x in range(b.order):
        buckets.setdefault(inv_b[x], []).append(x)
    cand = [buckets.get(inv_a[g], []) for g in gens]
    if any(not c for c in cand):
        return None

    def assign(i: int, imgs: list[int]) -> dict[int, int] | None:
        if i == len(gens):
            return None
        for y in cand[i]:
            trial = hom_from_images(a, gens[: i + 1], b, imgs + [y])
            if trial is None:
                continue
            if len(trial) == a.order:
                if len(set(trial.values())) == a.order:
                    return trial
                continue
            got = assign(i + 1, imgs + [y])
            if got is not None:
                return got
        return None

    return assign(0, [])


def groups_isomorphic(a: FiniteGroup, b: FiniteGroup) -> bool:
    """Exact below the search cap, fingerprint comparison above."""
    if a.order != b.order:
        return False
    if a.order > ISO_ORDER_LIMIT:
        return a.fingerprint() == b.fingerprint()
    return find_isomorphism(a, b) is not None


# -- products ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SemidirectSpec:
    kernel: FiniteGroup
    acting: FiniteGroup
    action: np.ndarray  # shape (|acting|, |kernel|), action[h] a permutation

    def validate(self):
        nk, nh = self.kernel.order, self.acting.order
        act = np.asarray(self.action, dtype=np.int64)
        if act.shape != (nh, nk):
            raise UnsupportedInputError("action table has wrong shape")
        if not np.array_equal(act[0], np.arange(nk)):
            raise UnsupportedInputError("identity must act trivially")
        tk = self.kernel.table
        for h in range(nh):
            ph = act[h]
            if not np.array_equal(np.sort(ph), np.arange(nk)):
                raise UnsupportedInputError(f"action of {h} is not a permutation")
            if not np.array_equal(ph[tk], tk[np.ix_(ph, ph)]):
                raise UnsupportedInputError(f"action of {h} is not an automorphism")
        th = self.acting.table
        for h1 in range(nh):
            for h2 in range(nh):
                if not np.array_equal(act[th[h1, h2]], act[h1][act[h2]]):
                    raise UnsupportedInputError("action is not a homomorphism")
        return act


def semidirect_product(spec: SemidirectSpec, name: str | None = None):
    """Semidirect product kernel x| acting. Returns (group, embed_kernel, embed_acting)."""
    act = spec.validate()
    kg, hg = spec.kernel, spec.acting
    nk, nh = kg.order, hg.order
    n = nk * nh
    table = np.empty((n, n), dtype=np.int32)
    tk, th = kg.table, hg.table
    h_grid = np.empty((nh, nk * nh), dtype=np.int32)
    for h1 in range(nh):
        h_grid[h1] = np.broadcast_to(th[h1][None, :], (nk, nh)).reshape(-1)
    for a1 in range(nk):
        for h1 in range(nh):
            npart = tk[a1, act[h1]]  # over a2
            row = (npart[:, None] * nh).astype(np.int32)
            table[a1 * nh + h1] = (np.broadcast_to(row, (nk, nh)).reshape(-1)
                                   + h_grid[h1])
    labels = None
    if kg.labels is not None and hg.labels is not None:
        labels = [f"({kg.labels[a]},{hg.labels[h]})" for a in range(nk) for h in range(nh)]
    g = FiniteGroup(table, name=name or f"{kg.name}_by_{hg.name}", labels=labels)
    embed_k = np.arange(nk, dtype=np.int64) * nh
    embed_h = np.arange(nh, dtype=np.int64)
    return g, embed_k, embed_h


def direct_product(a: FiniteGroup, b: FiniteGroup, name: str | None = None):
    act = np.broadcast_to(np.arange(b.order, dtype=np.int64), (a.order, b.order))
    spec = SemidirectSpec(kernel=b, acting=a, action=np.ascontiguousarray(act))
    g, eb, ea = semidirect_product(spec, name=name or f"{a.name}_x_{b.name}")
    return g, ea, eb


def cyclic_generator(g: FiniteGroup, elems: np.ndarray) -> int | None:
    """Smallest element generating the given subgroup if it is cyclic."""
    orders = g.element_orders()
    for x in map(int, elems):
        if int(orders[x]) == elems.size:
            return x
    return None


def central_product(a: FiniteGroup, b: FiniteGroup, za=None, zb=None,
                    iso: dict[int, int] | None = None, name: str | None = None):
    """Quotient of a x b identifying central subgroups za ~ zb.

    Defaults: za = Z(a), zb = Z(b), identified along a generator when both are
    cyclic of equal order. Returns (group, embed_a, embed_b).
    """
    za = a.center() if za is None else np.unique(np.asarray(za, dtype=np.int64))
    zb = b.center() if zb is None else np.unique(np.asarray(zb, dtype=np.int64))
    amask = np.zeros(a.order, dtype=bool)
    amask[a.center()] = True
    bmask = np.zeros(b.order, dtype=bool)
    bmask[b.center()] = True
    if not amask[za].all() or not bmask[zb].all():
        raise UnsupportedInputError("identified subgroups must be central")
    if za.size != zb.size:
        raise UnsupportedInputError("identified subgroups must be isomorphic")
    if iso is None:
        ga = cyclic_generator(a, za)
        gb = cyclic_generator(b, zb)
        if ga is None or gb is None:
            raise UnsupportedInputError(
                "default identification needs cyclic centers; pass iso=")
        iso = {}
        xa, xb = 0, 0
        for _ in range(za.size):
            iso[xa] = xb
            xa, xb = a.mul(xa, ga), b.mul(xb, gb)
    for x in map(int, za):
        for y in map(int, za):
            if iso[a.mul(x, y)] != b.mul(iso[x], iso[y]):
                raise UnsupportedInputError("identification is not a homomorphism")
    if len(set(iso.values())) != za.size or set(iso.values()) != {int(v) for v in zb}:
        raise UnsupportedInputError("identification is not a bijection onto zb")
    prod, ea, eb = direct_product(a, b)
    glued = [prod.mul(int(ea[z]), int(eb[b.inverse(iso[int(z)])])) for z in za]
    qm = prod.quotient(prod.subgroup_closure(glued))
    g = qm.group
    if name:
        g.name = name
    return g, qm.proj[ea], qm.proj[eb]
