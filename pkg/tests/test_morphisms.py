from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from grpdyn.constructions import cyclic, dihedral, elementary_abelian, symmetric
from grpdyn.errors import CapabilityError, NotHomomorphismError, NotInvariantError
from grpdyn.groups import (
    FiniteGroup,
    are_isomorphic,
    center,
    direct_product,
    meo,
    quotient,
)
from grpdyn.morphisms import (
    AffineMap,
    Automorphism,
    GroupMorphism,
    aut_data,
    affine_from_dict,
    automorphism_group,
    automorphism_from_dict,
    induced_automorphism,
    inner_automorphism,
    maffo,
    maffo_rel,
    mao,
    mao_rel,
    max_affine_cycle_length,
    restrict,
    twisted_class_representatives,
)


def brute_map_order(images):
    """Order of a permutation by composing it with itself."""
    f = np.asarray(images)
    cur = f.copy()
    k = 1
    while not (cur == np.arange(f.size)).all():
        cur = f[cur]
        k += 1
    return k


def brute_automorphisms(G):
    """Every bijection fixing 0 that respects the table (only for tiny G)."""
    import itertools

    out = []
    for rest in itertools.permutations(range(1, G.order)):
        phi = np.array((0,) + rest)
        if (phi[G.table] == G.table[np.ix_(phi, phi)]).all():
            out.append(tuple(phi))
    return sorted(out)


def test_automorphism_counts(A5, D5):
    assert len(automorphism_group(cyclic(5))) == 4
    assert len(automorphism_group(A5)) == 120
    assert len(automorphism_group(D5)) == 20


@pytest.mark.parametrize("G", [cyclic(6), dihedral(3), dihedral(4), cyclic(2), elementary_abelian(2, 2)])
def test_enumeration_matches_brute_force(G):
    found = sorted(tuple(int(x) for x in a.images) for a in automorphism_group(G))
    assert found == brute_automorphisms(G)


def test_aut_groups_as_abstract_groups(A5, D5):
    from grpdyn.constructions import holomorph

    def as_group(G):
        rows = aut_data(G).images
        index = {r.tobytes(): i for i, r in enumerate(rows)}
        table = [[index[a[b].tobytes()] for b in rows] for a in rows]
        return FiniteGroup(table)

    assert are_isomorphic(as_group(A5), symmetric(5))
    assert are_isomorphic(as_group(D5), holomorph(5))


def test_enumeration_is_deterministic_and_closed(S4):
    rows = aut_data(S4).images
    assert (np.lexsort(rows.T[::-1]) == np.arange(len(rows))).all()
    keys = {r.tobytes() for r in rows}
    for a in rows:
        inv = np.empty_like(a)
        inv[a] = np.arange(a.size)
        assert inv.tobytes() in keys
        for b in rows[::3]:
            assert a[b].tobytes() in keys


def test_threshold_capability(A5):
    with pytest.raises(CapabilityError, match="600"):
        aut_data(FiniteGroup(direct_product(A5, cyclic(11)).table), threshold=600)


def test_inner_automorphisms(S4):
    Z = cyclic(7)
    assert inner_automorphism(Z, 3).is_identity()
    S3 = symmetric(3)
    t = next(g for g in range(6) if S3.element_orders[g] == 2)
    assert inner_automorphism(S3, t).order == 2
    inner = {inner_automorphism(S4, g).images.tobytes() for g in range(S4.order)}
    assert len(inner) == S4.order // center(S4).order


def test_inner_count_over_catalog(small_catalog):
    for G in small_catalog[::3]:
        inner = {inner_automorphism(G, g).images.tobytes() for g in range(G.order)}
        assert len(inner) * center(G).order == G.order


def test_checked_rejects_non_homomorphisms():
    G = cyclic(5)
    with pytest.raises(NotHomomorphismError):
        Automorphism.checked(G, [0, 2, 1, 3, 4])
    with pytest.raises(NotHomomorphismError):
        Automorphism.checked(G, [0, 1, 1, 3, 4])
    with pytest.raises(NotHomomorphismError):
        GroupMorphism.checked(G, cyclic(3), [0, 1, 2, 0, 1])


def test_mao_maffo_examples(A5, D5, Z6):
    assert (mao(A5), maffo(A5)) == (6, 15)
    assert mao_rel(A5) == Fraction(1, 10) and maffo_rel(A5) == Fraction(1, 4)
    assert mao(D5) == 5 and mao_rel(D5) == Fraction(1, 2)
    assert mao_rel(cyclic(5)) == Fraction(4, 5)
    assert mao_rel(cyclic(1)) == 1 and maffo_rel(cyclic(1)) == 1
    assert (mao(Z6), maffo(Z6)) == (2, 6)


def test_maffo_by_brute_force(S4, D5):
    # order of every affine map by repeated composition
    for G in (S4, D5, cyclic(8), dihedral(4)):
        best = 0
        for phi in automorphism_group(G):
            for x in range(G.order):
                best = max(best, brute_map_order(G.table[x, phi.images]))
        assert maffo(G) == best


@given(st.integers(0, 23), st.integers(0, 23))
def test_affine_order_formula_matches_iteration(x, i):
    G = symmetric(4)
    phi = automorphism_group(G)[i]
    A = AffineMap(x, phi)
    assert A.order == brute_map_order(A.images) == A.cycles.order


def test_affine_composition(S4):
    auts = automorphism_group(S4)
    A, B = AffineMap(5, auts[3]), AffineMap(17, auts[10])
    C = A.compose(B)
    assert (C.images == A.images[B.images]).all()


def test_invariant_inequalities(small_catalog):
    for G in small_catalog:
        try:
            m, mf = mao(G), maffo(G)
        except CapabilityError:
            continue
        Q = quotient(G, center(G)).group
        assert mf >= m >= meo(Q)


def test_mao_bounded_by_order_for_elementary_abelian():
    for p, n in ((2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 2), (7, 2)):
        B = elementary_abelian(p, n)
        assert mao(B) <= B.order
        assert mao(B) == p**n - 1


def test_twisted_classes_preserve_cycle_structure(S4):
    for phi in automorphism_group(S4)[::5]:
        reps = twisted_class_representatives(S4, phi)
        seen = {}
        for x in range(S4.order):
            seen.setdefault(AffineMap(x, phi).cycles, []).append(x)
        assert len(reps) >= 1
        structures = {AffineMap(x, phi).cycles for x in reps}
        assert structures == set(seen)


def test_max_affine_cycle_length(A5, Z6, D5):
    assert max_affine_cycle_length(A5) == 15
    assert max_affine_cycle_length(Z6) == 6
    best = max(
        max(AffineMap(x, phi).cycles.max_length for x in range(D5.order)) for phi in automorphism_group(D5)
    )
    assert max_affine_cycle_length(D5) == best


def test_induced_automorphism_examples():
    Z9 = cyclic(9)
    inversion = Automorphism.checked(Z9, [(-x) % 9 for x in range(9)])
    N = Z9.generated([3])
    ind = induced_automorphism(inversion, N)
    Q = quotient(Z9, N)
    assert Q.group.order == 3
    # coset of 1 goes to coset of 8 = -1
    assert ind(Q.projection[1]) == Q.projection[8]
    assert ind.order == 2
    assert induced_automorphism(Automorphism.identity(Z9), N).is_identity()
    top = induced_automorphism(inversion, Z9.whole)
    assert top.group.order == 1 and top.is_identity()


def test_induced_commutes_with_projection(S4):
    from grpdyn.groups import normal_subgroups

    for N in normal_subgroups(S4):
        for phi in automorphism_group(S4)[::4]:
            ind = induced_automorphism(phi, N)
            pi = quotient(S4, N).projection
            assert (ind.images[pi] == pi[phi.images]).all()


def test_non_invariant_subgroup_rejected():
    V = elementary_abelian(2, 2)
    swap = next(a for a in automorphism_group(V) if a.order == 3)
    N = V.generated([1])
    with pytest.raises(NotInvariantError) as info:
        restrict(swap, N)
    assert info.value.witness["element"] in N


def test_restrict_examples():
    P = direct_product(cyclic(3), cyclic(5))
    inversion = Automorphism.checked(P, P.inverses)
    Z3 = P.generated([5])  # (1, 0)
    r = restrict(inversion, Z3)
    assert r.group.order == 3 and r.order == 2
    assert restrict(Automorphism.identity(P), Z3).is_identity()


def test_serialization_round_trip(S4):
    phi = automorphism_group(S4)[7]
    assert automorphism_from_dict(S4, phi.to_dict()) == phi
    A = AffineMap(3, phi)
    B = affine_from_dict(S4, A.to_dict())
    assert (B.images == A.images).all()


def test_limits_apply_to_memoized_results():
    G = symmetric(4)
    assert mao(G) == 4 and maffo(G) > 0 and max_affine_cycle_length(G) > 0
    for fn in (aut_data, mao, maffo, max_affine_cycle_length):
        with pytest.raises(CapabilityError):
            fn(G, threshold=10)


def test_budget_overrun_is_memoized():
    import time

    G = elementary_abelian(2, 4)
    t0 = time.time()
    with pytest.raises(CapabilityError):
        aut_data(G, budget=50)
    first = time.time() - t0
    t0 = time.time()
    with pytest.raises(CapabilityError, match="budget"):
        aut_data(G, budget=50)
    assert time.time() - t0 <= first + 0.01
    assert len(aut_data(G)) == 20160
