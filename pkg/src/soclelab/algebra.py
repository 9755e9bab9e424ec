"""The center of F_pG in the class-sum basis.

Center elements are length-k coefficient vectors over the conjugacy classes
(class 0 is the identity class). Full group-algebra elements are length-n
coefficient vectors over group elements. The multiplication engine evaluates
central products only at class representatives, which keeps every operation
at O(n k) instead of O(n^2).
"""

from __future__ import annotations

import numpy as np

from .errors import ConsistencyError, UnsupportedInputError
from .fplin import FpMatrix, Subspace, check_prime
from .groups import FiniteGroup, QuotientMap


class CenterAlgebra:
    def __init__(self, group: FiniteGroup, p: int):
        check_prime(p)
        self.group = group
        self.p = p
        self.classes = group.conjugacy_classes()
        self.k = len(self.classes)
        self.n = group.order
        self.reps = np.array([c.rep for c in self.classes], dtype=np.int64)
        self.cls_of = group.class_index_of()
        if self.classes[0].rep != 0:
            raise ConsistencyError("identity class is not first")
        # P[g, j] = (g^-1) * rep_j ; central product (u v)(rep_j) needs it
        t, inv = group.table, group.inv
        self._prodidx = t[inv][:, self.reps]
        # element order grouped by class, for summing over classes at once
        self._by_class = np.argsort(self.cls_of, kind="stable")
        sizes = np.array([c.size for c in self.classes], dtype=np.int64)
        self.class_sizes = sizes
        self._starts = np.concatenate([[0], np.cumsum(sizes)[:-1]])

    # -- vector plumbing ---------------------------------------------------

    def zero(self) -> np.ndarray:
        return np.zeros(self.k, dtype=np.int64)

    def identity_vec(self) -> np.ndarray:
        v = self.zero()
        v[0] = 1
        return v

    def expand(self, v) -> np.ndarray:
        """Class-coefficient vector to element-coefficient vector."""
        v = np.asarray(v, dtype=np.int64) % self.p
        return v[self.cls_of]

    def restrict(self, a) -> np.ndarray:
        """Element-coefficient vector of a central element to class basis."""
        a = np.asarray(a, dtype=np.int64) % self.p
        out = a[self.reps]
        if not np.array_equal(out[self.cls_of], a):
            raise UnsupportedInputError("vector is not constant on classes")
        return out

    def class_sum_vec(self, class_index: int) -> np.ndarray:
        v = self.zero()
        v[class_index] = 1
        return v

    def subset_sum_vec(self, elems) -> np.ndarray:
        """Indicator sum of a normal (class-closed) subset, in the class basis."""
        a = np.zeros(self.n, dtype=np.int64)
        a[np.asarray(elems, dtype=np.int64)] = 1
        return self.restrict(a)

    # -- multiplication ------------------------------------------------------

    def multiply(self, u, v) -> np.ndarray:
        """Product of two central elements, class basis in and out."""
        uf = self.expand(u)
        vf = self.expand(v)
        w = uf @ vf[self._prodidx]
        return w % self.p

    def power(self, u, e: int) -> np.ndarray:
        acc = self.identity_vec()
        base = np.asarray(u, dtype=np.int64) % self.p
        e = int(e)
        while e:
            if e & 1:
                acc = self.multiply(acc, base)
            base = self.multiply(base, base)
            e >>= 1
        return acc

    def mult_matrix(self, b) -> FpMatrix:
        """Matrix of x -> b*x on the center, class basis."""
        bf = self.expand(b)
        a = bf[self._prodidx]  # a[g, j'] = b(g^-1 rep_j')
        s = np.add.reduceat(a[self._by_class], self._starts, axis=0) % self.p
        return FpMatrix(self.p, s.T)

    def annihilator(self, vectors) -> Subspace:
        """Subspace of the center killing every given central vector."""
        vecs = [np.asarray(v, dtype=np.int64) % self.p for v in vectors]
        vecs = [v for v in vecs if v.any()]
        if not vecs:
            return Subspace(self.p, self.k, np.eye(self.k, dtype=np.int64))
        stacked = np.vstack([self.mult_matrix(v).a for v in vecs])
        return FpMatrix(self.p, stacked).kernel()

    # -- radical and socle -----------------------------------------------------

    def power_map_matrix(self) -> FpMatrix:
        """Matrix of x -> x^p (F_p-linear since the center is commutative)."""
        cols = np.empty((self.k, self.k), dtype=np.int64)
        for j in range(self.k):
            cols[:, j] = self.power(self.class_sum_vec(j), self.p)
        return FpMatrix(self.p, cols)

    def jacobson_radical(self) -> Subspace:
        """Nilradical of the center: kernel of enough iterates of x -> x^p."""
        if "radical" in self.__dict__:
            return self.__dict__["radical"]
        m = 0
        pm = 1
        while pm < self.k:
            pm *= self.p
            m += 1
        mat = self.power_map_matrix().matpow(m)
        rad = mat.kernel()
        for b in rad.basis:
            if self.power(b, pm).any():
                raise ConsistencyError("radical vector is not nilpotent")
        self.__dict__["radical"] = rad
        return rad

    def radical_span_from_classes(self) -> Subspace:
        """Span of the predicted radical basis: for each nontrivial class the
        class sum itself when p divides the class size, otherwise the class
        sum minus (class size) times the identity."""
        rows = []
        for j in range(1, self.k):
            v = self.class_sum_vec(j)
            sz = int(self.class_sizes[j])
            if sz % self.p != 0:
                v[0] = (-sz) % self.p
            rows.append(v)
        if not rows:
            return Subspace(self.p, self.k)
        return Subspace(self.p, self.k, np.array(rows))

    def socle(self) -> Subspace:
        """Annihilator of the radical inside the center."""
        if "socle_space" not in self.__dict__:
            rad = self.jacobson_radical()
            self.__dict__["socle_space"] = self.annihilator(list(rad.basis))
        return self.__dict__["socle_space"]

    # -- the ideal question -----------------------------------------------------

    def _full_subspace(self, center_subspace: Subspace) -> Subspace:
        rows = np.array([self.expand(b) for b in center_subspace.basis]
                        ) if center_subspace.dim else np.zeros((0, self.n))
        return Subspace(self.p, self.n, rows)

    def is_ideal_in_group_algebra(self, center_subspace: Subspace) -> bool:
        """Stability of the span under left and right multiplication by the
        group generators. Stability under generators is stability under every
        group element (compose the moves) and hence under all of FG (span)."""
        space = self._full_subspace(center_subspace)
        gens = self.group.generators()
        t, inv = self.group.table, self.group.inv
        moves = []
        for g in gens:
            moves.append(t[inv[g], :])   # left:  (g y)[u] = y[g^-1 u]
            moves.append(t[:, inv[g]])   # right: (y g)[u] = y[u g^-1]
        for y in space.basis:
            for mv in moves:
                if not space.contains_vector(y[mv]):
                    return False
        return True

    def derived_coset_ids(self) -> np.ndarray:
        der = self.group.derived_subgroup()
        return self.group.table[der, :].min(axis=0)

    def lies_in_derived_coset_span(self, center_vec) -> bool:
        """Membership in (G')+ FG: the coefficients are constant on G' cosets."""
        a = self.expand(center_vec)
        cid = self.derived_coset_ids()
        order = np.argsort(cid, kind="stable")
        sorted_vals = a[order]
        sorted_ids = cid[order]
        boundaries = np.flatnonzero(np.diff(sorted_ids)) + 1
        for chunk in np.split(sorted_vals, boundaries):
            if chunk.size and (chunk != chunk[0]).any():
                return False
        return True

    def socle_is_ideal_direct(self) -> bool:
        return self.is_ideal_in_group_algebra(self.socle())

    def socle_is_ideal_criterion(self) -> bool:
        return all(self.lies_in_derived_coset_span(b) for b in self.socle().basis)

    def socle_ideal_verdict(self) -> tuple[bool, bool]:
        """(direct test, containment criterion). Raises if they disagree."""
        direct = self.socle_is_ideal_direct()
        crit = self.socle_is_ideal_criterion()
        if direct != crit:
            raise ConsistencyError(
                f"ideal tests disagree on {self.group.name} at p={self.p}: "
                f"direct={direct} criterion={crit}")
        return direct, crit

    # -- projections and class filters -----------------------------------------

    def push_through_quotient(self, center_vec, qm: QuotientMap,
                              target: "CenterAlgebra") -> np.ndarray:
        """Image of a central element under FG -> F(G/N), class basis both ends."""
        a = self.expand(center_vec)
        out_full = np.zeros(target.n, dtype=np.int64)
        np.add.at(out_full, qm.proj, a)
        return target.restrict(out_full % self.p)

    def surviving_pprime_classes(self) -> list[int]:
        """Nontrivial classes whose radical vector survives the map to
        F(G / G''), computed two independent ways (must agree).

        Route one: classes not inside G'' whose fiber ratio over the quotient
        class is coprime to p. Route two: nonzero image of the radical basis
        vector under the quotient push.
        """
        g = self.group
        second = g.second_derived()
        qm = g.quotient(second)
        target = CenterAlgebra(qm.group, self.p)
        inside = np.zeros(self.n, dtype=bool)
        inside[second] = True
        route_a: list[int] = []
        for j in range(1, self.k):
            c = self.classes[j]
            if inside[c.rep]:
                continue
            qcls = target.classes[int(target.cls_of[qm.proj[c.rep]])]
            ratio = c.size // qcls.size
            if c.size % qcls.size:
                raise ConsistencyError("class does not map onto a quotient class evenly")
            if ratio % self.p != 0:
                route_a.append(j)
        route_b: list[int] = []
        for j in range(1, self.k):
            v = self.class_sum_vec(j)
            sz = int(self.class_sizes[j])
            if sz % self.p != 0:
                v[0] = (-sz) % self.p
            if self.push_through_quotient(v, qm, target).any():
                route_b.append(j)
        if route_a != route_b:
            raise ConsistencyError(
                f"surviving-class routes disagree on {g.name} at p={self.p}")
        return route_a

    # -- socle block structure ---------------------------------------------------

    def socle_coset_decomposition(self, sylow_elems) -> list[tuple[int, int]]:
        """Socle dimensions per coset of the given Sylow subgroup.

        Returns (coset representative, dimension) for cosets with nonzero
        block, sorted by representative. The blocks must sum to the socle.
        """
        soc_full = self._full_subspace(self.socle())
        cid = self.group.table[np.asarray(sylow_elems, dtype=np.int64), :].min(axis=0)
        reps = np.unique(cid)
        out = []
        total = 0
        for r in map(int, reps):
            cols = np.flatnonzero(cid == r)
            coord = np.zeros((cols.size, self.n), dtype=np.int64)
            coord[np.arange(cols.size), cols] = 1
            block = soc_full.intersect(Subspace(self.p, self.n, coord))
            if block.dim:
                out.append((r, block.dim))
                total += block.dim
        if total != soc_full.dim:
            raise ConsistencyError("socle does not split along Sylow cosets")
        return out

    def dims(self) -> dict:
        return {
            "center": self.k,
            "radical": self.jacobson_radical().dim,
            "socle": self.socle().dim,
        }
