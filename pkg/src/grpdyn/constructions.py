"""Group families, the default catalog, and the G_C groups B x| V_C.

G_C is built over the first 3C odd primes p_i: B = prod Z/p_i, and V_C is a
group of 4^C sign patterns acting on B by inverting the flagged coordinates.
Element ``(x, v)`` (meaning ``b * alpha_v``) has index ``b_index*|W| + v``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm, prod

import numpy as np
from sympy import divisors, nextprime, totient

from .dynamics import CycleStructure, cycle_lengths, product_cycle_structure
from .errors import CapabilityError, NotHomomorphismError
from .groups import (
    MAX_TABLE_ORDER,
    FiniteGroup,
    are_isomorphic,
    direct_product,
    semidirect_product,
)
from .morphisms import Automorphism, homomorphism_witness

FAMILIES = (
    "cyclic",
    "abelian",
    "dihedral",
    "dicyclic",
    "symmetric",
    "alternating",
    "elementary_abelian",
    "holomorph",
    "semidirect",
    "product",
)


def cyclic(n):
    a = np.arange(n)
    return FiniteGroup((a[:, None] + a[None, :]) % n, f"Z{n}", validate=False)


def abelian(factors):
    factors = [int(f) for f in factors if int(f) > 1] or [1]
    G = cyclic(factors[0])
    for f in factors[1:]:
        G = direct_product(G, cyclic(f))
    G.name = "x".join(f"Z{f}" for f in factors)
    return G


def elementary_abelian(p, n):
    G = abelian([p] * n)
    G.name = f"E{p}^{n}"
    return G


def dihedral(n):
    """Symmetries of the n-gon, order 2n; element ``r^i s^j`` has index ``i + n*j``."""
    i = np.tile(np.arange(n), 2)
    j = np.repeat(np.arange(2), n)
    sign = np.where(j == 1, -1, 1)
    ri = (i[:, None] + sign[:, None] * i[None, :]) % n
    rj = (j[:, None] + j[None, :]) % 2
    return FiniteGroup(ri + n * rj, f"Dih{n}", validate=False)


def dicyclic(n):
    """``<a, x | a^2n, x^2 = a^n, x a x^-1 = a^-1>``, order 4n; ``a^i x^j`` -> ``i + 2n*j``."""
    m = 2 * n
    i = np.tile(np.arange(m), 2)
    j = np.repeat(np.arange(2), m)
    i1, i2 = i[:, None], i[None, :]
    j1, j2 = j[:, None], j[None, :]
    ex = np.where(j1 == 0, i1 + i2, i1 - i2)
    ex = np.where((j1 == 1) & (j2 == 1), ex + n, ex) % m
    ej = (j1 + j2) % 2
    return FiniteGroup(ex + m * ej, f"Dic{n}", validate=False)


def _sign(p):
    return sum(p[a] > p[b] for a in range(len(p)) for b in range(a + 1, len(p))) % 2


def symmetric(m):
    if m > 6:
        raise CapabilityError("symmetric groups are limited to degree 6")
    perms = np.array(list(itertools.permutations(range(max(m, 1)))), dtype=np.int64)
    return FiniteGroup._from_element_perms(perms, f"S{m}")


def alternating(m):
    if m > 6:
        raise CapabilityError("alternating groups are limited to degree 6")
    perms = [p for p in itertools.permutations(range(max(m, 1))) if _sign(p) == 0]
    return FiniteGroup._from_element_perms(np.array(perms, dtype=np.int64), f"A{m}")


def units_group(n):
    """Multiplicative group of Z/n; element i is ``units[i]`` (1 first)."""
    units = [u for u in range(1, max(n, 2)) if gcd(u, n) == 1] if n > 1 else [0]
    pos = {u: i for i, u in enumerate(units)}
    table = [[pos[(a * b) % n] if n > 1 else 0 for b in units] for a in units]
    return FiniteGroup(table, f"U{n}", validate=False), units


def holomorph(n):
    """``Z_n x| Aut(Z_n)``."""
    U, units = units_group(n)
    act = [[(u * x) % n for x in range(n)] for u in units]
    G = semidirect_product(cyclic(n), U, act, check=False)
    G.name = f"Hol{n}"
    return G


def metacyclic(m, n, k):
    """``Z_m x| Z_n`` where the generator of ``Z_n`` acts by ``x -> k*x``."""
    if gcd(k, m) != 1 or pow(k, n, m) != 1 % m:
        raise ValueError(f"x -> {k}x does not define an action of Z_{n} on Z_{m}")
    act = [[(pow(k, h, m) * x) % m for x in range(m)] for h in range(n)]
    G = semidirect_product(cyclic(m), cyclic(n), act, check=False)
    G.name = f"Z{m}:{k}Z{n}"
    return G


def family_order(name, **params):
    """Order of a family member, computed without building its table."""
    if name == "cyclic":
        return params["n"]
    if name == "abelian":
        return prod(params["factors"])
    if name == "dihedral":
        return 2 * params["n"]
    if name == "dicyclic":
        return 4 * params["n"]
    if name in ("symmetric", "alternating"):
        m = params["n"]
        return prod(range(1, m + 1)) // (2 if name == "alternating" and m > 1 else 1)
    if name == "elementary_abelian":
        return params["p"] ** params["n"]
    if name == "holomorph":
        return params["n"] * int(totient(params["n"]))
    if name == "semidirect":
        return params["m"] * params["n"]
    if name == "product":
        return prod(family_order(f, **fp) for f, fp in params["factors"])
    raise ValueError(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}")


def build_family(name, max_order=MAX_TABLE_ORDER, **params):
    """Build a named family member, e.g. ``build_family("dihedral", n=5)``.

    ``product`` takes ``factors=[(name, params), ...]``.
    """
    order = family_order(name, **params)
    if name in ("symmetric", "alternating") and params["n"] > 6:
        raise CapabilityError(f"{name} groups are limited to degree 6")
    if order > max_order:
        raise CapabilityError(f"{name} group of order {order} exceeds the bound {max_order}")
    if name == "cyclic":
        return cyclic(params["n"])
    if name == "abelian":
        return abelian(params["factors"])
    if name == "dihedral":
        return dihedral(params["n"])
    if name == "dicyclic":
        return dicyclic(params["n"])
    if name == "symmetric":
        return symmetric(params["n"])
    if name == "alternating":
        return alternating(params["n"])
    if name == "elementary_abelian":
        return elementary_abelian(params["p"], params["n"])
    if name == "holomorph":
        return holomorph(params["n"])
    if name == "semidirect":
        return metacyclic(params["m"], params["n"], params["k"])
    parts = [build_family(f, max_order=max_order, **p) for f, p in params["factors"]]
    G = parts[0]
    for H in parts[1:]:
        G = direct_product(G, H)
    G.name = "x".join(p.name for p in parts)
    return G


# --- catalog ---------------------------------------------------------------


def _invariant_factor_lists(n):
    """All chains d_1 | d_2 | ... | d_r with product n and d_1 > 1."""
    out = []

    def rec(rest, prev, acc):
        if rest == 1:
            out.append(acc)
            return
        for d in divisors(rest):
            if d > 1 and d % prev == 0 and (rest // d == 1 or (rest // d) % d == 0):
                rec(rest // d, d, acc + [int(d)])

    rec(n, 1, [])
    return out


def abelian_invariant_factors(max_order):
    """Invariant-factor lists of every abelian group up to ``max_order``."""
    result = []
    for n in range(2, max_order + 1):
        for chain in _invariant_factor_lists(n):
            result.append(chain)
    return result


def catalog_specs(max_order=100):
    """Family specs for the default catalog, before deduplication."""
    specs = [("cyclic", {"n": n}) for n in range(1, max_order + 1)]
    specs += [
        ("abelian", {"factors": f}) for f in abelian_invariant_factors(max_order) if len(f) > 1
    ]
    nonabelian = []
    nonabelian += [("dihedral", {"n": n}) for n in range(3, max_order // 2 + 1)]
    nonabelian += [("dicyclic", {"n": n}) for n in range(2, max_order // 4 + 1)]
    nonabelian += [("symmetric", {"n": m}) for m in (3, 4, 5) if prod(range(1, m + 1)) <= max_order]
    nonabelian += [("alternating", {"n": m}) for m in (4, 5, 6) if prod(range(1, m + 1)) // 2 <= max_order]
    nonabelian += [
        ("holomorph", {"n": n}) for n in range(3, max_order + 1) if n * int(totient(n)) <= max_order
    ]
    for m in range(3, max_order // 2 + 1):
        for n in range(2, max_order // m + 1):
            for k in range(2, m):
                if gcd(k, m) == 1 and pow(k, n, m) == 1:
                    nonabelian.append(("semidirect", {"m": m, "n": n, "k": k}))
    specs += nonabelian
    n_abelian = len(specs) - len(nonabelian)
    small = [(f, p, family_order(f, **p)) for f, p in specs]
    for i, j in itertools.combinations_with_replacement(range(1, len(small)), 2):
        if j < n_abelian:
            continue
        (f1, p1, o1), (f2, p2, o2) = small[i], small[j]
        if o1 * o2 <= max_order:
            specs.append(("product", {"factors": [(f1, p1), (f2, p2)]}))
    return specs


EXTRAS = (("alternating", {"n": 5}), ("symmetric", {"n": 5}), ("alternating", {"n": 6}))


def default_catalog(max_order=100, extras=EXTRAS):
    """Isomorphism-deduplicated family members up to ``max_order``, plus extras.

    Sorted by order; within an order, first-constructed representative wins.
    """
    groups = []
    buckets = {}
    for fam, params in list(catalog_specs(max_order)) + list(extras):
        try:
            G = build_family(fam, **params)
        except CapabilityError:
            continue
        same = buckets.setdefault(G.order, [])
        if any(are_isomorphic(G, H) for H in same):
            continue
        same.append(G)
        groups.append(G)
    groups.sort(key=lambda G: G.order)
    return groups


# --- the G_C family ----------------------------------------------------------

BLOCK_SPAN = ((0, 1, 1), (1, 0, 1))
BLOCK_U = ((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0))
DEFAULT_GC_BUDGET = 200_000


def first_odd_primes(k):
    out = []
    p = 2
    while len(out) < k:
        p = nextprime(p)
        out.append(int(p))
    return tuple(out)


class GCGroup:
    """Structured arithmetic on ``B x| V_C`` without a Cayley table."""

    def __init__(self, primes, W):
        self.primes = tuple(primes)
        self.W = tuple(W)
        self.w_index = {w: i for i, w in enumerate(self.W)}
        self.b_order = prod(self.primes)
        self.order = self.b_order * len(self.W)
        self.radix = tuple(prod(self.primes[i + 1:]) for i in range(len(self.primes)))

    def encode(self, x, v):
        b = sum((xi % p) * r for xi, p, r in zip(x, self.primes, self.radix))
        return b * len(self.W) + self.w_index[tuple(v)]

    def decode(self, g):
        b, wi = divmod(int(g), len(self.W))
        x = tuple((b // r) % p for p, r in zip(self.primes, self.radix))
        return x, self.W[wi]

    def act(self, v, x):
        """``alpha_v(x)``: invert the coordinates flagged in v."""
        return tuple((-xi if vi else xi) % p for xi, vi, p in zip(x, v, self.primes))

    def mul(self, g, h):
        x, v = self.decode(g)
        y, w = self.decode(h)
        z = tuple((a + b) % p for a, b, p in zip(x, self.act(v, y), self.primes))
        return self.encode(z, tuple(a ^ b for a, b in zip(v, w)))

    def inv(self, g):
        x, v = self.decode(g)
        return self.encode(self.act(v, tuple(-xi for xi in x)), v)


@dataclass(frozen=True, eq=False)
class GCData:
    C: int
    primes: tuple
    W: tuple
    structure: GCGroup
    group: FiniteGroup | None

    @property
    def order(self):
        return self.structure.order

    @property
    def V(self):
        """Inversion patterns as image maps on B-coordinate tuples."""
        return tuple((lambda x, v=v: self.structure.act(v, x)) for v in self.W)

    @cached_property
    def generators_of_W(self):
        gens = []
        for j in range(self.C):
            for u in BLOCK_SPAN:
                v = [0] * (3 * self.C)
                v[3 * j : 3 * j + 3] = u
                gens.append(tuple(v))
        return tuple(gens)

    def designated_element(self):
        """``b_1 * ... * b_3C``: every B-coordinate 1, trivial V-part."""
        return self.structure.encode((1,) * len(self.primes), self.W[0])


def _gc_W(C):
    """``W_C``: the image of ``U^C`` in ``F_2^{3C}``, block j on coordinates 3j..3j+2."""
    return tuple(tuple(c for u in combo for c in u) for combo in itertools.product(BLOCK_U, repeat=C))


def check_W_properties(C, W):
    """Every coordinate is hit by some v, and every v has at least C zeros."""
    n = 3 * C
    covers = all(any(v[i] for v in W) for i in range(n))
    zeros = all(sum(1 for c in v if c == 0) >= C for v in W)
    return covers, zeros


def build_gc(C, explicit_limit=1):
    """Construct ``G_C``; a Cayley table is built only for ``C <= explicit_limit``."""
    if not 1 <= C <= 4:
        raise CapabilityError(f"G_C is supported for 1 <= C <= 4, got C={C}")
    primes = first_odd_primes(3 * C)
    W = _gc_W(C)
    covers, zeros = check_W_properties(C, W)
    if not (covers and zeros and len(W) == 4**C):
        raise AssertionError("W_C construction lost a defining property")
    structure = GCGroup(primes, W)
    group = None
    if C <= explicit_limit:
        B = abelian(list(primes))
        windex = {w: i for i, w in enumerate(W)}
        wt = [[windex[tuple(a ^ b for a, b in zip(v, w))] for w in W] for v in W]
        Wg = FiniteGroup(wt, f"W{C}", validate=False)
        act = []
        for v in W:
            images = []
            for b in range(B.order):
                x, _ = structure.decode(b * len(W))
                images.append(structure.encode(structure.act(v, x), W[0]) // len(W))
            act.append(images)
        group = semidirect_product(B, Wg, act)
        group.name = f"G{C}"
    return GCData(C, primes, W, structure, group)


@dataclass(frozen=True)
class GCAutomorphism:
    """``b_i -> b_i^{k_i}`` and ``alpha_v -> c_v * alpha_v``.

    ``cocycle[j]`` is the B-coordinate tuple ``c_v`` for ``v = W[j]``.
    """

    k: tuple
    cocycle: tuple

    def apply(self, data, g):
        x, v = data.structure.decode(g)
        c = self.cocycle[data.structure.w_index[v]]
        z = tuple((ki * xi + ci) % p for ki, xi, ci, p in zip(self.k, x, c, data.primes))
        return data.structure.encode(z, v)

    def images(self, data):
        """Permutation of all group elements (mixed-radix indices), vectorized."""
        S = data.structure
        nw = len(S.W)
        idx = np.arange(S.order, dtype=np.int64)
        b, wi = np.divmod(idx, nw)
        out = np.zeros(S.order, dtype=np.int64)
        c = np.array(self.cocycle, dtype=np.int64)[wi]
        for i, (p, r, k) in enumerate(zip(S.primes, S.radix, self.k)):
            xi = (b // r) % p
            out += ((k * xi + c[:, i]) % p) * r
        return out * nw + wi

    def to_dict(self):
        return {"k": list(self.k), "cocycle": [list(c) for c in self.cocycle]}


def _units(p):
    return [u for u in range(1, p)]


def _unit_order(k, p):
    e, x = 1, k % p
    while x != 1:
        x = x * k % p
        e += 1
    return e


def gc_cocycles(data):
    """All cocycles ``c`` with ``c_{v+w} = c_v + alpha_v(c_w)``.

    Values on the generators of W are enumerated (each supported on its
    generator's nonzero coordinates), extended along W, and validated on all
    pairs of W.
    """
    S = data.structure
    gens = data.generators_of_W
    n = len(data.primes)
    W = data.W
    choices = []
    for g in gens:
        supp = [i for i in range(n) if g[i]]
        choices.append([dict(zip(supp, vals)) for vals in itertools.product(*(range(data.primes[i]) for i in supp))])
    # spanning tree of W over its generators
    tree = {W[0]: None}
    frontier = [W[0]]
    while frontier:
        nxt = []
        for v in frontier:
            for j, g in enumerate(gens):
                w = tuple(a ^ b for a, b in zip(v, g))
                if w not in tree:
                    tree[w] = (v, j)
                    nxt.append(w)
        frontier = nxt
    order = [w for w in tree if w != W[0]]
    out = []
    for combo in itertools.product(*choices):
        gvals = [tuple(d.get(i, 0) for i in range(n)) for d in combo]
        c = {W[0]: (0,) * n}
        for w in order:
            v, j = tree[w]
            c[w] = tuple((a + b) % p for a, b, p in zip(c[v], S.act(v, gvals[j]), data.primes))
        ok = all(c[g] == gvals[j] for j, g in enumerate(gens))
        if ok:
            for v in W:
                for w in W:
                    vw = tuple(a ^ b for a, b in zip(v, w))
                    rhs = tuple((a + b) % p for a, b, p in zip(c[v], S.act(v, c[w]), data.primes))
                    if c[vw] != rhs:
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            out.append(tuple(c[v] for v in W))
    return out


def gc_candidate_count(data):
    units = prod(p - 1 for p in data.primes)
    cocycle_choices = prod(prod(data.primes[i] for i in range(len(g)) if g[i]) for g in data.generators_of_W)
    return units * cocycle_choices


def gc_automorphisms(data, budget=DEFAULT_GC_BUDGET):
    """Every automorphism of the form (k, cocycle), each one verified."""
    count = gc_candidate_count(data)
    if count > budget:
        raise CapabilityError(f"G_{data.C}: {count} structural candidates exceed the budget {budget}")
    cocycles = gc_cocycles(data)
    out = []
    for k in itertools.product(*(_units(p) for p in data.primes)):
        for c in cocycles:
            xi = GCAutomorphism(tuple(k), c)
            if data.group is not None:
                images = xi.images(data)
                if np.unique(images).size != data.order:
                    raise NotHomomorphismError("structural map is not bijective", xi.to_dict())
                w = homomorphism_witness(data.group, data.group, images, exhaustive=False)
                if w is not None:
                    continue
            out.append(xi)
    return out


def gc_inner(data):
    """Conjugation by ``b_1 ... b_3C``: k = 1, c_v = 2 on every flagged coordinate."""
    n = len(data.primes)
    cocycle = tuple(tuple((2 * v[i]) % data.primes[i] for i in range(n)) for v in data.W)
    return GCAutomorphism((1,) * n, cocycle)


def _component_structure(k, c, p):
    """Cycle structure of ``x -> k*x + c`` on Z/p."""
    if k % p != 1:
        e = _unit_order(k, p)
        return CycleStructure.from_lengths([1] + [e] * ((p - 1) // e))
    if c % p:
        return CycleStructure(((p, 1),), p)
    return CycleStructure(((1, p),), p)


@dataclass(frozen=True)
class GCDynamics:
    order: int
    max_cycle: int
    cycles: CycleStructure
    per_coset: tuple


def gc_order_and_lambda(data, xi):
    """Order and largest cycle of ``xi`` from its coset dynamics.

    On the coset ``B*alpha_v`` the map is the product of the affine maps
    ``x_i -> k_i x_i + c_v[i]`` of the Z/p_i.
    """
    per_coset = []
    total = {}
    for j, v in enumerate(data.W):
        comps = [_component_structure(k, c, p) for k, c, p in zip(xi.k, xi.cocycle[j], data.primes)]
        cs = product_cycle_structure(comps)
        if not cs.has_regular_cycle:
            raise AssertionError("coset map without a regular cycle")
        per_coset.append(cs)
        for length, count in cs.cycles:
            total[length] = total.get(length, 0) + count
    whole = CycleStructure(tuple(sorted(total.items())), data.order)
    return GCDynamics(whole.order, whole.max_length, whole, tuple(per_coset))


def _block_profiles(data, j):
    """Distinct per-coset order tuples that block j can contribute.

    Orders depend only on ord(k_i) and on which c_v[i] vanish, so one unit of
    each order and one cocycle per zero pattern represent every automorphism.
    """
    primes = data.primes[3 * j : 3 * j + 3]
    sub = GCData(1, primes, _gc_W(1), GCGroup(primes, _gc_W(1)), None)
    cocycles = gc_cocycles(sub)
    patterns = {}
    for c in cocycles:
        key = tuple(tuple(x != 0 for x in cv) for cv in c)
        patterns.setdefault(key, c)
    unit_reps = []
    for p in primes:
        reps = {}
        for u in _units(p):
            reps.setdefault(_unit_order(u, p), u)
        unit_reps.append(sorted(reps.values()))
    profiles = {}
    for k in itertools.product(*unit_reps):
        for c in patterns.values():
            xi = GCAutomorphism(tuple(k), c)
            prof = tuple(cs.order for cs in gc_order_and_lambda(sub, xi).per_coset)
            profiles.setdefault(prof, xi)
    return profiles


@dataclass(frozen=True)
class GCGap:
    mao: int
    max_cycle: int
    gap: Fraction
    mao_witness: GCAutomorphism
    cycle_witness: GCAutomorphism
    method: str


def _combine_blocks(data, parts):
    k = tuple(x for xi in parts for x in xi.k)
    nw = len(BLOCK_U)
    cocycle = []
    for combo in itertools.product(range(nw), repeat=data.C):
        cocycle.append(tuple(x for j, u in enumerate(combo) for x in parts[j].cocycle[u]))
    return GCAutomorphism(k, tuple(cocycle))


def gc_gap(data, budget=DEFAULT_GC_BUDGET):
    """``mao(G_C) / Lambda(G_C)`` over all automorphisms of G_C.

    Uses the verified (k, cocycle) list when it fits the budget; otherwise
    combines per-block class representatives, since W, B and the cocycles
    split over the C blocks.
    """
    if gc_candidate_count(data) <= budget:
        best_o = best_l = None
        for xi in gc_automorphisms(data, budget):
            dyn = gc_order_and_lambda(data, xi)
            if best_o is None or dyn.order > best_o[0]:
                best_o = (dyn.order, xi)
            if best_l is None or dyn.max_cycle > best_l[0]:
                best_l = (dyn.max_cycle, xi)
        method = "exhaustive"
    else:
        blocks = [_block_profiles(data, j) for j in range(data.C)]
        best_o = best_l = None
        for combo in itertools.product(*(list(b.items()) for b in blocks)):
            profs = [p for p, _ in combo]
            order = lcm(*(x for p in profs for x in p))
            longest = max(lcm(*(profs[j][u] for j, u in enumerate(us))) for us in itertools.product(range(4), repeat=data.C))
            if best_o is None or order > best_o[0]:
                best_o = (order, [xi for _, xi in combo])
            if best_l is None or longest > best_l[0]:
                best_l = (longest, [xi for _, xi in combo])
        best_o = (best_o[0], _combine_blocks(data, best_o[1]))
        best_l = (best_l[0], _combine_blocks(data, best_l[1]))
        for value, xi, attr in ((best_o[0], best_o[1], "order"), (best_l[0], best_l[1], "max_cycle")):
            if getattr(gc_order_and_lambda(data, xi), attr) != value:
                raise AssertionError("block combination disagrees with coset dynamics")
        method = "block-classes"
    return GCGap(best_o[0], best_l[0], Fraction(best_o[0], best_l[0]), best_o[1], best_l[1], method)


def gc_direct_cycles(data, xi, coset=None):
    """Cycle structure of ``xi`` by explicit decomposition (optionally one coset)."""
    images = xi.images(data)
    if coset is None:
        return CycleStructure.from_lengths(cycle_lengths(images))
    nw = len(data.W)
    local = images[coset::nw] // nw
    return CycleStructure.from_lengths(cycle_lengths(local))


def gc_automorphism_of_group(data, xi):
    """``xi`` as a verified Automorphism of the explicit group."""
    return Automorphism.checked(data.group, xi.images(data))
