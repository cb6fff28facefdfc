"""Homomorphisms, automorphism groups, affine maps, and the invariants
mao (max automorphism order) and maffo (max bijective affine map order)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm

import numpy as np

from .dynamics import CycleStructure, cycle_lengths, cycle_structure
from .errors import CapabilityError, NotHomomorphismError, NotInvariantError
from .groups import FULL_ASSOC_LIMIT, quotient, search_homomorphisms

DEFAULT_AUT_THRESHOLD = 600
DEFAULT_AUT_BUDGET = 120_000


def homomorphism_witness(source, target, images, exhaustive=None):
    """A pair ``(a, b)`` with ``phi(ab) != phi(a)phi(b)``, or ``None``.

    Exhaustive over all pairs up to ``FULL_ASSOC_LIMIT`` elements; above
    that (or with ``exhaustive=False``), checked on (element, generator)
    pairs, which is equivalent.
    """
    if exhaustive is None:
        exhaustive = source.order <= FULL_ASSOC_LIMIT
    phi = np.asarray(images, dtype=np.int64)
    ts, tt = source.table, target.table
    if phi.shape != (source.order,) or phi.min() < 0 or phi.max() >= target.order:
        return ("shape", None)
    if phi[0] != 0:
        return (0, 0)
    if exhaustive:
        bad = np.argwhere(phi[ts] != tt[np.ix_(phi, phi)])
        if bad.size:
            return tuple(int(x) for x in bad[0])
        return None
    for g in source.generators:
        bad = np.flatnonzero(phi[ts[:, g]] != tt[phi, phi[g]])
        if bad.size:
            return (int(bad[0]), int(g))
    return None


@dataclass(frozen=True, eq=False)
class GroupMorphism:
    source: object
    target: object
    images: np.ndarray

    @classmethod
    def checked(cls, source, target, images):
        phi = np.array(images, dtype=np.int64)
        w = homomorphism_witness(source, target, phi)
        if w is not None:
            raise NotHomomorphismError(f"not a homomorphism (witness pair {w})", {"pair": list(w)})
        phi.setflags(write=False)
        return cls(source, target, phi)

    def __call__(self, g):
        return int(self.images[g])

    def __eq__(self, other):
        return (
            isinstance(other, GroupMorphism)
            and self.source is other.source
            and self.target is other.target
            and np.array_equal(self.images, other.images)
        )

    def __hash__(self):
        return hash((id(self.source), self.images.tobytes()))

    def key(self):
        return tuple(int(x) for x in self.images)

    def kernel(self):
        return self.source.subgroup(np.flatnonzero(self.images == 0))

    def image(self):
        return self.target.subgroup(np.unique(self.images))

    def to_dict(self):
        return {"images": self.images.tolist()}


class Automorphism(GroupMorphism):
    """Bijective endomorphism; ``images`` is a permutation of the elements."""

    @classmethod
    def checked(cls, group, images):
        phi = np.array(images, dtype=np.int64)
        if np.unique(phi).size != group.order or phi.size != group.order:
            raise NotHomomorphismError("images are not a permutation of the group", None)
        w = homomorphism_witness(group, group, phi)
        if w is not None:
            raise NotHomomorphismError(f"not a homomorphism (witness pair {w})", {"pair": list(w)})
        phi.setflags(write=False)
        return cls(group, group, phi)

    @classmethod
    def trusted(cls, group, images):
        phi = np.array(images, dtype=np.int64)
        phi.setflags(write=False)
        return cls(group, group, phi)

    @classmethod
    def identity(cls, group):
        return cls.trusted(group, np.arange(group.order))

    @property
    def group(self):
        return self.source

    @cached_property
    def inverse_images(self):
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(self.images.size)
        inv.setflags(write=False)
        return inv

    def inverse(self):
        return Automorphism.trusted(self.source, self.inverse_images)

    def compose(self, other):
        """``self o other``."""
        return Automorphism.trusted(self.source, self.images[other.images])

    def power(self, k):
        if k < 0:
            return self.inverse().power(-k)
        result = np.arange(self.source.order)
        base = self.images
        while k:
            if k & 1:
                result = base[result]
            base = base[base]
            k >>= 1
        return Automorphism.trusted(self.source, result)

    @cached_property
    def cycles(self):
        return cycle_structure(self.images)

    @property
    def order(self):
        return self.cycles.order

    def is_identity(self):
        return bool((self.images == np.arange(self.images.size)).all())


@dataclass(frozen=True, eq=False)
class AffineMap:
    """The permutation ``g -> x * auto(g)``."""

    translation: int
    auto: Automorphism

    @property
    def group(self):
        return self.auto.source

    def __call__(self, g):
        return self.group.mul(self.translation, self.auto(g))

    @cached_property
    def images(self):
        return self.group.table[self.translation, self.auto.images]

    def compose(self, other):
        """``self o other`` is again affine: ``x*phi(y)``, ``phi o psi``."""
        x = self.group.mul(self.translation, self.auto(other.translation))
        return AffineMap(x, self.auto.compose(other.auto))

    @cached_property
    def shift(self):
        """``x * phi(x) * ... * phi^(m-1)(x)`` with ``m = ord(phi)``."""
        G = self.group
        s = cur = self.translation
        for _ in range(self.auto.order - 1):
            cur = self.auto(cur)
            s = G.mul(s, cur)
        return s

    @property
    def order(self):
        """``ord(phi) * ord(shift)``: the m-th power is left translation by the shift."""
        return self.auto.order * int(self.group.element_orders[self.shift])

    @cached_property
    def cycles(self):
        return cycle_structure(self.images)

    def to_dict(self):
        return {"x": int(self.translation), "auto": self.auto.to_dict()}


def inner_automorphism(G, g):
    t = G.table
    images = t[t[g, np.arange(G.order)], G.inverses[g]]
    return Automorphism.trusted(G, images)


# --- automorphism group ----------------------------------------------------


@dataclass(frozen=True, eq=False)
class AutData:
    """All automorphisms of a group as rows of an array, lexicographically sorted."""

    group: object
    images: np.ndarray
    orders: np.ndarray
    max_cycles: np.ndarray

    def __len__(self):
        return len(self.images)

    def automorphism(self, i):
        return Automorphism.trusted(self.group, self.images[i])

    @cached_property
    def index(self):
        return {row.tobytes(): i for i, row in enumerate(self.images)}


def _cycle_stats(rows):
    orders = np.empty(len(rows), dtype=object)
    longest = np.empty(len(rows), dtype=np.int64)
    for i, row in enumerate(rows):
        lengths = cycle_lengths(row)
        orders[i] = lcm(*lengths)
        longest[i] = max(lengths)
    return orders.astype(np.int64), longest


def aut_data(G, threshold=DEFAULT_AUT_THRESHOLD, budget=DEFAULT_AUT_BUDGET):
    """All automorphisms of G with their orders and largest cycles.

    Results, including a budget overrun, are memoized per budget, so the
    outcome depends only on the arguments and never on earlier calls.
    """
    if G.order > threshold:
        raise CapabilityError(
            f"exhaustive automorphism search is limited to order {threshold}; "
            f"{G.name} has order {G.order}"
        )
    key = ("aut", budget)
    cached = G._memo.get(key)
    if isinstance(cached, CapabilityError):
        raise CapabilityError(str(cached))
    if cached is not None:
        return cached
    by_sig = {}
    for h, s in enumerate(G.element_signature):
        by_sig.setdefault(s, []).append(h)
    cands = [by_sig[G.element_signature[g]] for g in G.generators]
    try:
        found = search_homomorphisms(G, G, cands, injective=True, limit=budget)
    except CapabilityError as exc:
        err = CapabilityError(f"{G.name}: automorphism budget exceeded ({exc})")
        G._memo[key] = err
        raise err from exc
    rows = np.array(found, dtype=np.int64).reshape(len(found), G.order)
    rows = rows[np.lexsort(rows.T[::-1])]
    rows.setflags(write=False)
    orders, longest = _cycle_stats(rows)
    data = AutData(G, rows, orders, longest)
    G._memo[key] = data
    return data


def automorphism_group(G, threshold=DEFAULT_AUT_THRESHOLD, budget=DEFAULT_AUT_BUDGET):
    """All automorphisms of ``G`` in lexicographic order of their image tuples."""
    data = aut_data(G, threshold, budget)
    return [data.automorphism(i) for i in range(len(data))]


def shift_orders(G, rows, orders):
    """For each automorphism row, the orders of ``shift(x)`` for every ``x``.

    Rows sharing an order m are processed together: ``m-1`` vectorized steps.
    """
    t = G.table
    eo = G.element_orders
    n = G.order
    out = np.empty((len(rows), n), dtype=np.int64)
    for m in np.unique(orders):
        idx = np.flatnonzero(orders == m)
        A = rows[idx]
        s = np.broadcast_to(np.arange(n), A.shape).copy()
        cur = s.copy()
        for _ in range(int(m) - 1):
            cur = np.take_along_axis(A, cur, axis=1)
            s = t[s, cur]
        out[idx] = eo[s]
    return out


def affine_orders(G, auto):
    """``ord(A_{x,auto})`` for every translation x, as an array indexed by x."""
    rows = np.asarray(auto.images)[None, :]
    return auto.order * shift_orders(G, rows, np.array([auto.order]))[0]


def mao(G, **kw):
    return int(aut_data(G, **kw).orders.max())


def maffo(G, **kw):
    key = "maffo"
    data = aut_data(G, **kw)  # enforces the limits even when the value is memoized
    if key not in G._memo:
        best = 0
        chunk = max(1, 2_000_000 // G.order)
        for start in range(0, len(data), chunk):
            sl = slice(start, start + chunk)
            sh = shift_orders(G, data.images[sl], data.orders[sl])
            best = max(best, int((data.orders[sl] * sh.max(axis=1)).max()))
        G._memo[key] = best
    return G._memo[key]


def mao_rel(G, **kw):
    return Fraction(mao(G, **kw), G.order)


def maffo_rel(G, **kw):
    return Fraction(maffo(G, **kw), G.order)


def max_aut_cycle_length(G, **kw):
    """Largest cycle length of any automorphism."""
    return int(aut_data(G, **kw).max_cycles.max())


def twisted_class_representatives(G, auto):
    """One translation per class of ``x ~ y x auto(y)^-1``.

    Conjugating ``A_{x,auto}`` by left translation by y gives
    ``A_{y x auto(y)^-1, auto}``, so the cycle structure is constant on classes.
    """
    t, inv = G.table, G.inverses
    ys = np.arange(G.order)
    tail = inv[np.asarray(auto.images)]
    seen = np.zeros(G.order, dtype=bool)
    reps = []
    for x in range(G.order):
        if not seen[x]:
            reps.append(x)
            seen[t[t[ys, x], tail]] = True
    return reps


def max_affine_cycle_length(G, **kw):
    """Largest cycle length of any bijective affine map."""
    key = "max_affine_cycle"
    data = aut_data(G, **kw)  # enforces the limits even when the value is memoized
    if key not in G._memo:
        t = G.table
        best = 0
        for i in range(len(data)):
            phi = data.automorphism(i)
            for x in twisted_class_representatives(G, phi):
                best = max(best, max(cycle_lengths(t[x, phi.images])))
        G._memo[key] = best
    return G._memo[key]


def induced_automorphism(alpha, N):
    """The automorphism of ``G/N`` with ``induced o pi = pi o alpha``."""
    G = alpha.source
    moved = np.asarray(alpha.images)[N.array]
    outside = np.flatnonzero(~N.mask[moved])
    if outside.size:
        n = int(N.array[outside[0]])
        raise NotInvariantError(
            f"subgroup is not invariant: {n} maps to {int(alpha.images[n])}", {"element": n}
        )
    Q = quotient(G, N)
    images = Q.projection[np.asarray(alpha.images)[Q.representatives]]
    return Automorphism.trusted(Q.group, images)


def restrict(alpha, N):
    """``alpha`` restricted to the invariant subgroup ``N`` (as ``N.as_group``)."""
    moved = np.asarray(alpha.images)[N.array]
    outside = np.flatnonzero(~N.mask[moved])
    if outside.size:
        n = int(N.array[outside[0]])
        raise NotInvariantError(
            f"subgroup is not invariant: {n} maps to {int(alpha.images[n])}", {"element": n}
        )
    return Automorphism.trusted(N.as_group, N.local_index[moved])


def automorphism_from_dict(G, data):
    return Automorphism.checked(G, data["images"])


def affine_from_dict(G, data):
    return AffineMap(int(data["x"]), automorphism_from_dict(G, data["auto"]))


__all__ = [
    "AffineMap",
    "AutData",
    "Automorphism",
    "CycleStructure",
    "GroupMorphism",
    "affine_orders",
    "aut_data",
    "automorphism_group",
    "homomorphism_witness",
    "induced_automorphism",
    "inner_automorphism",
    "maffo",
    "maffo_rel",
    "mao",
    "mao_rel",
    "max_affine_cycle_length",
    "max_aut_cycle_length",
    "restrict",
    "shift_orders",
    "twisted_class_representatives",
]
