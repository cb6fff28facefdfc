"""Finite dynamical systems: cycle decomposition, products, and FDG images."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm

import numpy as np

from .errors import NotHomomorphismError, NotInvariantError


def format_fraction(q):
    """Exact rational as ``"p/q"``, or ``"n"`` when it is a whole number."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class NotPeriodicError(ValueError):
    """The self-map is not a bijection, so it has no cycle decomposition."""


@dataclass(frozen=True)
class FDS:
    """A finite set ``0..size-1`` with a self-map."""

    transform: tuple

    @classmethod
    def from_map(cls, images):
        return cls(tuple(int(x) for x in np.asarray(images).ravel()))

    @classmethod
    def identity(cls, size):
        return cls(tuple(range(size)))

    @property
    def size(self):
        return len(self.transform)

    @cached_property
    def periodic(self):
        return len(set(self.transform)) == len(self.transform)

    def __call__(self, s):
        return self.transform[s]

    @cached_property
    def array(self):
        return np.array(self.transform, dtype=np.int64)


@dataclass(frozen=True)
class CycleStructure:
    """Multiset of cycle lengths, as sorted ``(length, count)`` pairs."""

    cycles: tuple
    source_size: int

    @classmethod
    def from_lengths(cls, lengths):
        counts = Counter(int(x) for x in lengths)
        return cls(tuple(sorted(counts.items())), sum(l * c for l, c in counts.items()))

    @property
    def max_length(self):
        return self.cycles[-1][0] if self.cycles else 1

    @property
    def max_ratio(self):
        if self.source_size == 0:
            return Fraction(1)
        return Fraction(self.max_length, self.source_size)

    @property
    def order(self):
        return lcm(*(l for l, _ in self.cycles)) if self.cycles else 1

    @property
    def has_regular_cycle(self):
        return self.max_length == self.order

    def to_dict(self):
        return {
            "cycles": [[str(l), str(c)] for l, c in self.cycles],
            "lambda": format_fraction(self.max_ratio),
            "order": str(self.order),
            "max_length": str(self.max_length),
            "regular": self.has_regular_cycle,
        }


def _as_list(psi):
    if isinstance(psi, FDS):
        return list(psi.transform)
    if isinstance(psi, np.ndarray):
        return psi.tolist()
    if hasattr(psi, "images"):
        return np.asarray(psi.images).tolist()
    return [int(x) for x in psi]


def cycle_lengths(psi):
    """Lengths of all cycles of a permutation, in order of their least point."""
    f = _as_list(psi)
    n = len(f)
    seen = bytearray(n)
    out = []
    for s in range(n):
        if seen[s]:
            continue
        length = 0
        x = s
        while not seen[x]:
            seen[x] = 1
            x = f[x]
            length += 1
        if x != s:
            raise NotPeriodicError(f"self-map is not bijective (point {x} is hit twice)")
        out.append(length)
    return out


def cycle_structure(psi):
    f = _as_list(psi)
    if len(set(f)) != len(f):
        raise NotPeriodicError("cycle structure is undefined for a non-bijective self-map")
    return CycleStructure.from_lengths(cycle_lengths(f))


def has_regular_cycle(psi):
    return cycle_structure(psi).has_regular_cycle


def point_cycle_lengths(psi):
    """Array giving, for each point, the length of the cycle through it."""
    f = _as_list(psi)
    n = len(f)
    out = np.zeros(n, dtype=np.int64)
    for s in range(n):
        if out[s]:
            continue
        orbit = [s]
        x = f[s]
        while x != s:
            orbit.append(x)
            x = f[x]
        out[orbit] = len(orbit)
    return out


def fds_product(systems):
    """Product system on the cartesian product, mixed-radix encoded.

    Point ``(s_1, ..., s_r)`` has index ``((s_1*n_2 + s_2)*n_3 + ...)``; the
    first factor is most significant.
    """
    systems = list(systems)
    if not systems:
        return FDS.identity(1)
    acc = systems[0].array
    for f in systems[1:]:
        acc = np.add.outer(acc * f.size, f.array).ravel()
    return FDS.from_map(acc)


def product_cycle_structure(structures):
    """Cycle structure of a product computed from the factors' structures.

    A pair of cycles of lengths a and b splits the product of their supports
    into gcd(a, b) cycles of length lcm(a, b).
    """
    acc = Counter({1: 1})
    size = 1
    for cs in structures:
        nxt = Counter()
        for a, ca in acc.items():
            for b, cb in cs.cycles:
                nxt[lcm(a, b)] += gcd(a, b) * ca * cb
        acc = nxt
        size *= cs.source_size
    return CycleStructure(tuple(sorted(acc.items())), size)


@dataclass(frozen=True, eq=False)
class FDGHom:
    """A group homomorphism ``eta`` with ``eta o f = g o eta``."""

    source_group: object
    source_map: np.ndarray
    target_group: object
    target_map: np.ndarray
    eta: np.ndarray

    def __post_init__(self):
        eta = np.asarray(self.eta)
        lhs = eta[np.asarray(self.source_map)]
        rhs = np.asarray(self.target_map)[eta]
        bad = np.flatnonzero(lhs != rhs)
        if bad.size:
            x = int(bad[0])
            raise NotInvariantError(
                f"map is not equivariant at {x}", {"x": x, "eta_f": int(lhs[x]), "g_eta": int(rhs[x])}
            )


def fdg_image(source, eta):
    """Image of the FDG ``source = (G, alpha)`` under the homomorphism ``eta``.

    Returns ``(K, beta)`` where ``K`` is ``eta[G]`` as a standalone group and
    ``beta`` the automorphism it inherits, ``beta(eta(g)) = eta(alpha(g))``.
    """
    from .morphisms import Automorphism

    G, alpha = source
    a = np.asarray(alpha.images)
    e = np.asarray(eta.images)
    H = eta.target
    image = H.subgroup(np.unique(e))
    K = image.as_group
    local = image.local_index
    beta = np.full(K.order, -1, dtype=np.int64)
    src = local[e]
    dst = local[e[a]]
    beta[src] = dst
    bad = np.flatnonzero(beta[src] != dst)
    if bad.size:
        g = int(bad[0])
        raise NotInvariantError(
            "kernel of eta is not invariant under the automorphism",
            {"g": g, "eta_g": int(e[g])},
        )
    try:
        induced = Automorphism.checked(K, beta)
    except NotHomomorphismError as exc:
        raise NotInvariantError(str(exc), exc.witness) from exc
    FDGHom(G, a, K, beta, src)
    return K, induced


@dataclass(frozen=True)
class CorollaryVerdict:
    passed: bool
    source_ratio: Fraction
    image_map_order: int
    image_order: int
    witness: dict | None = None


def check_quotient_corollary(source, image):
    """If the source automorphism has a cycle longer than half the group and
    the image automorphism is the identity, the image group must be trivial."""
    G, alpha = source
    Q, beta = image
    ratio = alpha.cycles.max_ratio
    border = beta.order
    violated = ratio > Fraction(1, 2) and border == 1 and Q.order != 1
    witness = None
    if violated:
        witness = {"group": G.name, "auto": np.asarray(alpha.images).tolist(), "image_order": Q.order}
    return CorollaryVerdict(not violated, ratio, border, Q.order, witness)
