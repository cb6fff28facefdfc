"""Concrete finite groups on element indices ``0..n-1``.

Index 0 is always the identity. Multiplication is an explicit Cayley table
(a read-only numpy array); groups given by permutation generators are
closed up and tabulated, which caps the order at ``MAX_TABLE_ORDER``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from .errors import (
    CapabilityError,
    GroupValidationError,
    NotHomomorphismError,
    NotNormalError,
)

MAX_TABLE_ORDER = 4096
FULL_ASSOC_LIMIT = 512
RANDOM_ASSOC_TRIPLES = 20000


def _check_associative(t, seed=0):
    n = len(t)
    if n <= FULL_ASSOC_LIMIT:
        for a in range(n):
            lhs = t[t[a]]  # (a*b)*c over all b, c
            rhs = t[a][t]  # a*(b*c)
            if not np.array_equal(lhs, rhs):
                b, c = np.argwhere(lhs != rhs)[0]
                return int(a), int(b), int(c)
        return None
    rng = np.random.default_rng(seed)
    a, b, c = rng.integers(0, n, size=(3, RANDOM_ASSOC_TRIPLES))
    bad = np.flatnonzero(t[t[a, b], c] != t[a, t[b, c]])
    if bad.size:
        k = bad[0]
        return int(a[k]), int(b[k]), int(c[k])
    return None


def _validate_table(t):
    n = len(t)
    if t.min() < 0 or t.max() >= n:
        raise GroupValidationError("table entries out of range")
    expect = np.arange(n)
    if not (np.sort(t, axis=1) == expect).all() or not (np.sort(t, axis=0) == expect[:, None]).all():
        raise GroupValidationError("table is not a Latin square")
    triple = _check_associative(t)
    if triple is not None:
        raise GroupValidationError(f"multiplication is not associative at {triple}")


def _closure(t, gens):
    """Sorted member array of the subgroup generated by ``gens``."""
    mask = np.zeros(len(t), dtype=bool)
    mask[0] = True
    gens = np.unique(np.asarray(list(gens), dtype=np.int64))
    gens = gens[gens != 0]
    if gens.size == 0:
        return np.array([0], dtype=np.int64)
    frontier = np.array([0], dtype=np.int64)
    while frontier.size:
        prods = t[np.ix_(frontier, gens)].ravel()
        new = np.unique(prods[~mask[prods]])
        mask[new] = True
        frontier = new
    return np.flatnonzero(mask)


def _bfs_layers(t, gens):
    """Breadth-first spanning tree of ``<gens>`` from the identity.

    Returns a list of layers ``(elements, parents, gen_positions)`` with
    ``elements[i] == parents[i] * gens[gen_positions[i]]``.
    """
    seen = np.zeros(len(t), dtype=bool)
    seen[0] = True
    frontier = np.array([0], dtype=np.int64)
    layers = []
    while frontier.size:
        els, pars, pos = [], [], []
        for j, g in enumerate(gens):
            prods = t[frontier, g]
            fresh = ~seen[prods]
            if not fresh.any():
                continue
            p, first = np.unique(prods[fresh], return_index=True)
            seen[p] = True
            els.append(p)
            pars.append(frontier[fresh][first])
            pos.append(np.full(p.size, j, dtype=np.int64))
        if not els:
            break
        frontier = np.concatenate(els)
        layers.append((frontier, np.concatenate(pars), np.concatenate(pos)))
    return layers


class FiniteGroup:
    """A finite group given by its Cayley table.

    ``table[g, h]`` is the index of ``g*h``. Instances are immutable; derived
    data is cached on first use.
    """

    def __init__(self, table, name="G", *, validate=True, permutations=None):
        t = np.array(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise GroupValidationError("Cayley table must be a non-empty square array")
        n = t.shape[0]
        if n > MAX_TABLE_ORDER:
            raise CapabilityError(f"order {n} exceeds the table limit {MAX_TABLE_ORDER}")
        if validate:
            _validate_table(t)
        ids = np.flatnonzero((t == np.arange(n)).all(axis=1))
        if ids.size == 0:
            raise GroupValidationError("no identity element")
        e = int(ids[0])
        if e != 0:
            sigma = np.arange(n)
            sigma[0], sigma[e] = e, 0
            t = sigma[t[np.ix_(sigma, sigma)]]
            if permutations is not None:
                permutations = np.asarray(permutations)[sigma]
        t.setflags(write=False)
        self.table = t
        self.name = name
        self.permutations = None if permutations is None else np.asarray(permutations)
        self._memo = {}

    @classmethod
    def from_permutations(cls, generators, degree=None, name="G"):
        """Close a list of permutations (image lists of ``0..d-1``) into a group.

        The product is composition ``(g*h)(i) = g(h(i))``.
        """
        gens = [tuple(int(x) for x in g) for g in generators]
        if degree is None:
            degree = len(gens[0]) if gens else 1
        for g in gens:
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise GroupValidationError(f"not a permutation of 0..{degree - 1}: {list(g)}")
        ident = tuple(range(degree))
        elements = [ident]
        index = {ident: 0}
        frontier = [ident]
        while frontier:
            nxt = []
            for p in frontier:
                for g in gens:
                    q = tuple(p[i] for i in g)
                    if q not in index:
                        if len(elements) >= MAX_TABLE_ORDER:
                            raise CapabilityError(
                                f"permutation group exceeds the table limit {MAX_TABLE_ORDER}"
                            )
                        index[q] = len(elements)
                        elements.append(q)
                        nxt.append(q)
            frontier = nxt
        return cls._from_element_perms(np.array(elements, dtype=np.int64), name)

    @classmethod
    def _from_element_perms(cls, perms, name):
        n, d = perms.shape
        weights = np.int64(d) ** np.arange(d, dtype=np.int64)
        keys = perms @ weights
        order = np.argsort(keys)
        sorted_keys = keys[order]
        table = np.empty((n, n), dtype=np.int64)
        for a in range(n):
            prod = perms[a][perms]  # row b: a o b
            table[a] = order[np.searchsorted(sorted_keys, prod @ weights)]
        return cls(table, name, validate=False, permutations=perms)

    # --- basic arithmetic -------------------------------------------------

    @property
    def order(self):
        return len(self.table)

    def __len__(self):
        return len(self.table)

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def mul(self, a, b):
        return int(self.table[a, b])

    def inv(self, a):
        return int(self.inverses[a])

    def power(self, g, k):
        if k < 0:
            g, k = self.inv(g), -k
        result, base = 0, g
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def conjugate(self, x, g):
        """``x g x^-1``."""
        return self.mul(self.mul(x, g), self.inv(x))

    def commutator(self, a, b):
        """``a^-1 b^-1 a b``."""
        t, inv = self.table, self.inverses
        return int(t[t[t[inv[a], inv[b]], a], b])

    @cached_property
    def inverses(self):
        inv = np.argmax(self.table == 0, axis=1)
        inv.setflags(write=False)
        return inv

    @cached_property
    def element_orders(self):
        n = self.order
        t = self.table
        xs = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        cur = xs.copy()
        k = 1
        while True:
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            if orders.all():
                break
            cur = t[cur, xs]
            k += 1
        orders.setflags(write=False)
        return orders

    @cached_property
    def is_abelian(self):
        return bool((self.table == self.table.T).all())

    # --- conjugacy ---------------------------------------------------------

    @cached_property
    def class_index(self):
        """Conjugacy class number of each element (classes in order of first element)."""
        n = self.order
        t, inv = self.table, self.inverses
        xs = np.arange(n)
        cls = np.full(n, -1, dtype=np.int64)
        count = 0
        for g in range(n):
            if cls[g] < 0:
                cls[t[t[xs, g], inv]] = count
                count += 1
        cls.setflags(write=False)
        return cls

    @cached_property
    def conjugacy_classes(self):
        cls = self.class_index
        return [np.flatnonzero(cls == c) for c in range(int(cls.max()) + 1)]

    @cached_property
    def class_sizes(self):
        """Size of the conjugacy class of each element."""
        counts = np.bincount(self.class_index)
        return counts[self.class_index]

    @cached_property
    def element_signature(self):
        """Automorphism-invariant label per element: (order, class size)."""
        return [(int(o), int(s)) for o, s in zip(self.element_orders, self.class_sizes)]

    # --- generation -------------------------------------------------------

    def closure(self, elements):
        return _closure(self.table, elements)

    @cached_property
    def generators(self):
        """A small generating set, chosen greedily.

        Each step adds the element that enlarges the generated subgroup most;
        ties go to the element with the fewest same-signature elements, which
        keeps homomorphism searches narrow.
        """
        n = self.order
        if n == 1:
            return ()
        sig = self.element_signature
        freq = Counter(sig)
        gens = []
        mask = np.zeros(n, dtype=bool)
        mask[0] = True
        size = 1
        while size < n:
            best = None
            for g in range(1, n):
                if mask[g]:
                    continue
                if gens:
                    members = _closure(self.table, gens + [g])
                    new_size = members.size
                else:
                    new_size = int(self.element_orders[g])
                    members = None
                key = (-new_size, freq[sig[g]], g)
                if best is None or key < best[0]:
                    best = (key, g, members)
            _, g, members = best
            gens.append(g)
            if members is None:
                members = _closure(self.table, gens)
            mask[:] = False
            mask[members] = True
            size = members.size
        return tuple(gens)

    @cached_property
    def word_layers(self):
        return _bfs_layers(self.table, self.generators)

    def subgroup(self, members):
        return Subgroup(self, tuple(sorted({int(m) for m in members})))

    def generated(self, elements):
        return Subgroup(self, tuple(int(m) for m in _closure(self.table, elements)))

    @cached_property
    def whole(self):
        return Subgroup(self, tuple(range(self.order)))

    @cached_property
    def trivial(self):
        return Subgroup(self, (0,))

    # --- serialization ----------------------------------------------------

    def to_dict(self):
        if self.permutations is not None:
            gens = [self.permutations[g].tolist() for g in self.generators]
            return {
                "name": self.name,
                "degree": int(self.permutations.shape[1]),
                "generators": gens,
            }
        return {"name": self.name, "cayley": self.table.tolist()}

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise GroupValidationError("group file must hold a JSON object")
        name = data.get("name", "G")
        if "cayley" in data:
            return cls(data["cayley"], name)
        if "generators" in data:
            degree = data.get("degree")
            if not isinstance(degree, int) or degree < 1:
                raise GroupValidationError("'degree' must be a positive integer")
            return cls.from_permutations(data["generators"], degree, name)
        raise GroupValidationError("group file needs 'cayley' or 'generators'")


def load_group(path):
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise GroupValidationError(f"malformed JSON: {exc}") from exc
    return FiniteGroup.from_dict(data)


def save_group(G, path):
    Path(path).write_text(json.dumps(G.to_dict()), encoding="utf-8")


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    members: tuple

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and other.parent is self.parent
            and other.members == self.members
        )

    def __hash__(self):
        return hash((id(self.parent), self.members))

    def __len__(self):
        return len(self.members)

    def __contains__(self, g):
        return bool(self.mask[g])

    def __repr__(self):
        return f"Subgroup(of {self.parent.name}, order={self.order})"

    @property
    def order(self):
        return len(self.members)

    @cached_property
    def array(self):
        return np.array(self.members, dtype=np.int64)

    @cached_property
    def mask(self):
        m = np.zeros(self.parent.order, dtype=bool)
        m[self.array] = True
        return m

    @cached_property
    def generators(self):
        orders = self.parent.element_orders
        gens = []
        covered = np.zeros(self.parent.order, dtype=bool)
        covered[0] = True
        for g in sorted(self.members, key=lambda x: (-orders[x], x)):
            if not covered[g]:
                gens.append(g)
                covered[:] = False
                covered[_closure(self.parent.table, gens)] = True
        return tuple(gens)

    def issubset(self, other):
        return bool(other.mask[self.array].all())

    def is_trivial(self):
        return self.order == 1

    def normality_witness(self):
        """``(g, h)`` with ``g h g^-1`` outside the subgroup, or ``None``."""
        G = self.parent
        for g in G.generators:
            for h in self.generators:
                if not self.mask[G.conjugate(g, h)]:
                    return (g, h)
        return None

    def is_normal(self):
        return self.normality_witness() is None

    @cached_property
    def as_group(self):
        """The subgroup as a standalone group; element i is ``members[i]``."""
        arr = self.array
        pos = np.full(self.parent.order, -1, dtype=np.int64)
        pos[arr] = np.arange(arr.size)
        sub = pos[self.parent.table[np.ix_(arr, arr)]]
        return FiniteGroup(sub, f"sub({self.parent.name},{arr.size})", validate=False)

    @cached_property
    def local_index(self):
        pos = np.full(self.parent.order, -1, dtype=np.int64)
        pos[self.array] = np.arange(self.order)
        return pos


@dataclass(frozen=True, eq=False)
class QuotientGroup:
    parent: FiniteGroup
    kernel: Subgroup
    cosets: tuple
    group: FiniteGroup
    projection: np.ndarray
    representatives: np.ndarray


def element_order(G, g):
    if not 0 <= g < G.order:
        raise IndexError(f"element {g} out of range for group of order {G.order}")
    return int(G.element_orders[g])


def meo(G):
    return int(G.element_orders.max())


def normal_closure(G, elements, under=None):
    """Smallest subgroup containing ``elements`` and normalized by ``under``.

    ``under`` defaults to the generators of ``G``.
    """
    conj_by = G.generators if under is None else tuple(under)
    gens = sorted({int(e) for e in elements} - {0})
    members = _closure(G.table, gens)
    mask = np.zeros(G.order, dtype=bool)
    mask[members] = True
    queue = list(gens)
    while queue:
        fresh = []
        for x in queue:
            for y in conj_by:
                c = G.conjugate(y, x)
                if not mask[c]:
                    gens.append(c)
                    members = _closure(G.table, gens)
                    mask[:] = False
                    mask[members] = True
                    fresh.append(c)
        queue = fresh
    return Subgroup(G, tuple(int(m) for m in members))


def commutator_subgroup(G, A=None, B=None):
    """``[A, B]`` for subgroups normal in ``G`` (defaults: both ``G``)."""
    A = G.whole if A is None else A
    B = G.whole if B is None else B
    comms = {G.commutator(a, b) for a in A.generators for b in B.generators}
    return normal_closure(G, comms, under=G.generators)


def derived_subgroup_of(G, H):
    """Commutator subgroup of ``H`` computed inside ``G``."""
    comms = {G.commutator(a, b) for a in H.generators for b in H.generators}
    return normal_closure(G, comms, under=H.generators)


def derived_series(G):
    """``G, G', G'', ...`` down to the first repeated term.

    A series that stalls above the trivial group lists the stable term
    twice, so a perfect group gives ``[G, G]``.
    """
    key = "derived_series"
    if key not in G._memo:
        series = [G.whole]
        while True:
            nxt = derived_subgroup_of(G, series[-1])
            if nxt == series[-1]:
                if not nxt.is_trivial():
                    series.append(nxt)
                break
            series.append(nxt)
        G._memo[key] = series
    return list(G._memo[key])


def lower_central_series(G):
    key = "lower_central_series"
    if key not in G._memo:
        series = [G.whole]
        while True:
            nxt = commutator_subgroup(G, series[-1], G.whole)
            if nxt == series[-1]:
                break
            series.append(nxt)
        G._memo[key] = series
    return list(G._memo[key])


def is_abelian(G):
    return G.is_abelian


def is_solvable(G):
    return derived_series(G)[-1].is_trivial()


def is_nilpotent(G):
    return lower_central_series(G)[-1].is_trivial()


def centralizer(G, S):
    t = G.table
    gens = np.array(S.generators if isinstance(S, Subgroup) else sorted(set(S)), dtype=np.int64)
    if gens.size == 0:
        return G.whole
    ok = (t[:, gens] == t[gens, :].T).all(axis=1)
    return Subgroup(G, tuple(int(x) for x in np.flatnonzero(ok)))


def center(G):
    key = "center"
    if key not in G._memo:
        G._memo[key] = centralizer(G, G.whole)
    return G._memo[key]


def minimal_normal_subgroups(G):
    key = "minimal_normal"
    if key in G._memo:
        return list(G._memo[key])
    found = {}
    for cls in G.conjugacy_classes[1:]:
        N = normal_closure(G, [int(cls[0])])
        found.setdefault(N.members, N)
    cands = sorted(found.values(), key=lambda N: (N.order, N.members))
    minimal = []
    for N in cands:
        if not any(M.order < N.order and M.issubset(N) for M in cands):
            minimal.append(N)
    G._memo[key] = minimal
    return list(minimal)


def normal_subgroups(G):
    """All normal subgroups, sorted by (order, members)."""
    key = "normal_subgroups"
    if key in G._memo:
        return list(G._memo[key])
    base = {}
    for cls in G.conjugacy_classes[1:]:
        N = normal_closure(G, [int(cls[0])])
        base.setdefault(N.members, N)
    found = {G.trivial.members: G.trivial}
    found.update(base)
    queue = list(base.values())
    while queue:
        N = queue.pop()
        for M in base.values():
            if M.issubset(N):
                continue
            J = G.generated(N.generators + M.generators)
            if J.members not in found:
                found[J.members] = J
                queue.append(J)
    result = sorted(found.values(), key=lambda N: (N.order, N.members))
    G._memo[key] = result
    return list(result)


def quotient(G, N):
    """``G/N`` with cosets numbered by first element (coset 0 is ``N``)."""
    key = ("quotient", N.members)
    if key in G._memo:
        return G._memo[key]
    witness = N.normality_witness()
    if witness is not None:
        g, h = witness
        raise NotNormalError(
            f"subgroup is not normal: conjugating {h} by {g} leaves it",
            {"g": g, "h": h, "conjugate": G.conjugate(g, h)},
        )
    t = G.table
    label = np.full(G.order, -1, dtype=np.int64)
    reps = []
    cosets = []
    for g in range(G.order):
        if label[g] < 0:
            coset = np.sort(t[g, N.array])
            label[coset] = len(reps)
            reps.append(g)
            cosets.append(coset)
    reps = np.array(reps, dtype=np.int64)
    qt = label[t[np.ix_(reps, reps)]]
    Q = FiniteGroup(qt, f"{G.name}/{N.order}", validate=False)
    label.setflags(write=False)
    result = QuotientGroup(G, N, tuple(cosets), Q, label, reps)
    G._memo[key] = result
    return result


def solvable_radical(G):
    """Largest solvable normal subgroup.

    Grows a solvable normal subgroup ``R`` by the preimage of the join of the
    abelian minimal normal subgroups of ``G/R`` until ``G/R`` has none.
    """
    key = "radical"
    if key in G._memo:
        return G._memo[key]
    R = G.trivial
    while True:
        Q = quotient(G, R)
        abelian_mins = [M for M in minimal_normal_subgroups(Q.group) if M.as_group.is_abelian]
        if not abelian_mins:
            break
        join = Q.group.generated([g for M in abelian_mins for g in M.generators])
        R = Subgroup(G, tuple(int(x) for x in np.flatnonzero(join.mask[Q.projection])))
    G._memo[key] = R
    return R


def is_semisimple(G):
    return solvable_radical(G).is_trivial()


def direct_product(G, H, name=None):
    n, m = G.order, H.order
    a = np.repeat(np.arange(n), m)
    b = np.tile(np.arange(m), n)
    table = G.table[np.ix_(a, a)] * m + H.table[np.ix_(b, b)]
    return FiniteGroup(table, name or f"{G.name}x{H.name}", validate=False)


def semidirect_product(N, H, action, name=None, check=True):
    """``N x| H`` with ``(n1,h1)(n2,h2) = (n1*action[h1](n2), h1*h2)``.

    ``action[h]`` is the image list of the automorphism of ``N`` attached to
    ``h``. Element ``(n, h)`` has index ``n*|H| + h``.
    """
    act = np.array([np.asarray(action[h], dtype=np.int64) for h in range(H.order)])
    if act.shape != (H.order, N.order):
        raise NotHomomorphismError("action must give one image list of length |N| per element of H")
    if check:
        tn = N.table
        for h in range(H.order):
            a = act[h]
            if sorted(a.tolist()) != list(range(N.order)):
                raise NotHomomorphismError(f"action of {h} is not bijective", {"h": h})
            bad = np.argwhere(a[tn] != tn[np.ix_(a, a)])
            if bad.size:
                x, y = (int(v) for v in bad[0])
                raise NotHomomorphismError(
                    f"action of {h} is not a homomorphism of N", {"h": h, "pair": [x, y]}
                )
        th = H.table
        for h1 in range(H.order):
            composed = act[h1][act]  # row h2: action(h1) o action(h2)
            bad = np.flatnonzero((act[th[h1]] != composed).any(axis=1))
            if bad.size:
                h2 = int(bad[0])
                raise NotHomomorphismError(
                    "action is not a homomorphism H -> Aut(N)", {"pair": [h1, h2]}
                )
    n, m = N.order, H.order
    ns = np.repeat(np.arange(n), m)
    hs = np.tile(np.arange(m), n)
    n1, n2 = ns[:, None], ns[None, :]
    h1, h2 = hs[:, None], hs[None, :]
    table = N.table[n1, act[h1, n2]] * m + H.table[h1, h2]
    return FiniteGroup(table, name or f"{N.name}:{H.name}", validate=False)


# --- homomorphism search ---------------------------------------------------


class _WordBasis:
    """Spanning trees of the chain ``<g1> <= <g1,g2> <= ...`` of a generating list."""

    def __init__(self, G, gens):
        t = G.table
        self.gens = tuple(gens)
        self.levels = []
        for i in range(1, len(gens) + 1):
            layers = _bfs_layers(t, gens[:i])
            members = np.concatenate([np.array([0])] + [lay[0] for lay in layers])
            rel = [t[members, g] for g in gens[:i]]
            self.levels.append((layers, members, rel))


def search_homomorphisms(G, H, candidates, *, gens=None, injective=True, first_only=False, limit=None):
    """Backtracking search for homomorphisms ``G -> H``.

    ``candidates[i]`` lists admissible images of the i-th generator. Each
    partial assignment is extended along a spanning tree of the generated
    subgroup and checked against every relation ``phi(x*g) = phi(x)*phi(g)``
    there, so every returned image array is a verified homomorphism.
    """
    gens = G.generators if gens is None else tuple(gens)
    if not gens:
        return [np.zeros(1, dtype=np.int64)]
    th = H.table
    basis = _WordBasis(G, gens)
    phi = np.full(G.order, -1, dtype=np.int64)
    phi[0] = 0
    images = []
    found = []

    def assign(level):
        layers, members, rel = basis.levels[level]
        himg = np.array(images, dtype=np.int64)
        for els, pars, pos in layers:
            phi[els] = th[phi[pars], himg[pos]]
        mapped = phi[members]
        for j, prod in enumerate(rel):
            if (phi[prod] != th[mapped, images[j]]).any():
                return False
        if injective and np.unique(mapped).size != members.size:
            return False
        return True

    def rec(level):
        for h in candidates[level]:
            images.append(int(h))
            if assign(level):
                if level == len(gens) - 1:
                    found.append(phi.copy())
                    if limit is not None and len(found) > limit:
                        raise CapabilityError(f"more than {limit} homomorphisms")
                    if first_only:
                        images.pop()
                        return True
                elif rec(level + 1) and first_only:
                    images.pop()
                    return True
            images.pop()
        return False

    rec(0)
    return found


def _refined_signature(G):
    """Per-element (order, class size, square roots, cube roots): all preserved by isomorphisms."""
    if "refined_signature" not in G._memo:
        t = G.table
        x = np.arange(G.order)
        sq = t[x, x]
        roots2 = np.bincount(sq, minlength=G.order)
        roots3 = np.bincount(t[sq, x], minlength=G.order)
        G._memo["refined_signature"] = [
            (o, c, int(r2), int(r3)) for (o, c), r2, r3 in zip(G.element_signature, roots2, roots3)
        ]
    return G._memo["refined_signature"]


def _iso_profile(G):
    if "iso_profile" not in G._memo:
        G._memo["iso_profile"] = (
            G.order,
            G.is_abelian,
            tuple(sorted(Counter(_refined_signature(G)).items())),
            center(G).order,
            derived_subgroup_of(G, G.whole).order,
        )
    return G._memo["iso_profile"]


def isomorphism(G, H):
    """Image array of an isomorphism ``G -> H``, or ``None``."""
    if G.order != H.order or _iso_profile(G) != _iso_profile(H):
        return None
    by_sig = {}
    for h, s in enumerate(_refined_signature(H)):
        by_sig.setdefault(s, []).append(h)
    sig = _refined_signature(G)
    cands = [by_sig.get(sig[g], []) for g in G.generators]
    found = search_homomorphisms(G, H, cands, injective=True, first_only=True)
    return found[0] if found else None


def are_isomorphic(G, H):
    return isomorphism(G, H) is not None
