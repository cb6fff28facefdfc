import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from grpdyn.errors import CapabilityError
from grpdyn.linfp import (
    FpAffine,
    FpMatrix,
    FpPoly,
    affine_order,
    affine_order_by_iteration,
    all_vectors,
    batch_affine_orders_by_formula,
    batch_affine_orders_by_iteration,
    companion_matrix,
    elspas_order,
    invariant_factor_chains,
    invertible_matrices,
    irreducible_polys,
    lcm_affine_orders,
    matrix_order,
    monic_polys,
    shift_element,
    similarity_representatives,
)

X = sympy.Symbol("X")


def sympy_poly(P):
    return sympy.Poly(list(reversed(P.coeffs)), X, modulus=P.p)


def charpoly_mod_p(M):
    """Characteristic polynomial by sympy's exact integer computation, reduced mod p."""
    cp = sympy.Matrix(M.entries.tolist()).charpoly(X)
    return [int(c) % M.p for c in reversed(cp.all_coeffs())]


def test_matrix_order_examples():
    assert matrix_order(FpMatrix.identity(3, 5)) == 1
    assert matrix_order(companion_matrix(FpPoly(2, (1, 0, 1)))) == 2
    P = FpPoly.x_minus(1, 3) ** 4
    assert matrix_order(companion_matrix(P)) == 9
    with pytest.raises(ValueError):
        matrix_order(FpMatrix(3, [[1, 2], [2, 1]]))


def test_companion_examples():
    C = companion_matrix(FpPoly.x_minus(1, 5))
    assert C.tolist() == [[1]]
    assert companion_matrix(FpPoly(2, (1, 0, 1))).tolist() == [[0, 1], [1, 0]]
    with pytest.raises(ValueError):
        companion_matrix(FpPoly(3, (1, 2)))


@pytest.mark.parametrize("p,d", [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)])
def test_companion_charpoly(p, d):
    for P in monic_polys(p, d):
        assert charpoly_mod_p(companion_matrix(P)) == list(P.coeffs)


@pytest.mark.parametrize("p,d", [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3)])
def test_irreducibility_matches_sympy(p, d):
    for P in monic_polys(p, d):
        assert P.is_irreducible() == sympy_poly(P).is_irreducible


def test_irreducible_counts():
    # Gauss: number of monic irreducibles of degree d over F_p
    def gauss(p, d):
        return sum(sympy.mobius(d // e) * p**e for e in sympy.divisors(d)) // d

    for p, d in [(2, 4), (3, 3), (5, 2), (2, 6)]:
        assert len(irreducible_polys(p, d)) == gauss(p, d)


def test_irreducibility_degree_limit():
    with pytest.raises(CapabilityError):
        FpPoly(2, (1,) * 8).is_irreducible()


def test_elspas_examples():
    for p in (2, 3, 5, 7):
        assert elspas_order(FpPoly.x_minus(1, p), 1) == 1
    assert elspas_order(FpPoly.x_minus(1, 3), 4) == 9
    P = FpPoly(2, (1, 1, 1))
    assert elspas_order(P, 2) == 6
    assert matrix_order(companion_matrix(P**2)) == 6


def test_elspas_rejections():
    with pytest.raises(ValueError):
        elspas_order(FpPoly(2, (1, 0, 1)), 2)  # (X+1)^2 over F_2
    with pytest.raises(ValueError):
        elspas_order(FpPoly(3, (0, 1)), 1)  # X
    with pytest.raises(ValueError):
        elspas_order(FpPoly(3, (1, 2)), 1)  # not monic


def test_shift_examples():
    I = FpMatrix.identity(1, 3)
    for x in range(3):
        assert shift_element(I, [x]).tolist() == [x]
    neg = FpMatrix(5, [[4]])
    for x in range(5):
        assert shift_element(neg, [x]).tolist() == [0]
    J = companion_matrix(FpPoly.x_minus(1, 2) ** 2)
    e1 = np.array([1, 0])
    assert shift_element(J, e1).tolist() == ((e1 + J @ e1) % 2).tolist()


def test_affine_examples():
    M = companion_matrix(FpPoly(3, (1, 1)) ** 2)  # (X+1)^2 over F_3
    assert affine_order(FpAffine(M, [0, 0])) == matrix_order(M)
    assert affine_order(FpAffine(FpMatrix.identity(2, 7), [1, 0])) == 7
    # unipotent 2x2 block over F_3: 1 + J + J^2 = 3N = 0, so the shift vanishes
    J = companion_matrix(FpPoly.x_minus(1, 3) ** 2)
    A = FpAffine(J, [1, 0])
    assert shift_element(J, [1, 0]).tolist() == [0, 0]
    assert affine_order(A) == affine_order_by_iteration(A) == 3
    # over F_2 the shift 1 + J = N is nonzero on e1, so the order doubles
    J2 = companion_matrix(FpPoly.x_minus(1, 2) ** 2)
    A2 = FpAffine(J2, [1, 0])
    assert affine_order(A2) == affine_order_by_iteration(A2) == 4


def test_affine_rejects_singular():
    with pytest.raises(ValueError):
        FpAffine(FpMatrix(2, [[1, 1], [1, 1]]), [0, 0])


def test_lcm_examples():
    assert lcm_affine_orders(FpMatrix.identity(2, 3)) == 3
    singer = companion_matrix(FpPoly(2, (1, 1, 0, 1)))  # X^3+X+1, primitive
    assert matrix_order(singer) == 7
    assert lcm_affine_orders(singer) == 7
    mats, _, _ = invertible_matrices(3, 2)
    assert len(mats) == 48
    assert max(lcm_affine_orders(FpMatrix(3, m)) for m in mats) <= 9
    with pytest.raises(CapabilityError):
        lcm_affine_orders(FpMatrix.identity(7, 3))


@pytest.mark.parametrize("p,n,count", [(2, 2, 6), (2, 3, 168), (3, 2, 48), (5, 2, 480)])
def test_gl_sizes(p, n, count):
    mats, orders, sums = invertible_matrices(p, n)
    assert len(mats) == count
    for m, o in zip(mats[::7], orders[::7]):
        assert matrix_order(FpMatrix(p, m)) == o


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (5, 2)])
def test_batch_orders_match_scalar_code(p, n):
    mats, orders, sums = invertible_matrices(p, n)
    shifts = all_vectors(p, n)
    it = batch_affine_orders_by_iteration(mats, shifts, p)
    fo = batch_affine_orders_by_formula(orders, sums, shifts, p)
    assert (it == fo).all()
    for i in range(0, len(mats), max(1, len(mats) // 10)):
        for j in range(len(shifts)):
            A = FpAffine(FpMatrix(p, mats[i]), shifts[j])
            assert it[i, j] == affine_order_by_iteration(A) == affine_order(A)


@pytest.mark.parametrize("p,n,classes", [(2, 2, 3), (2, 3, 6), (3, 2, 8), (2, 4, 14), (2, 5, 27), (3, 4, 78)])
def test_similarity_class_counts(p, n, classes):
    assert len(similarity_representatives(p, n)) == classes


def test_representatives_cover_gl_by_conjugacy_count():
    # class sizes |GL| / |centralizer| sum to |GL|
    p, n = 3, 2
    mats, _, _ = invertible_matrices(p, n)
    reps = similarity_representatives(p, n)
    total = 0
    for R in reps:
        cent = sum(
            1 for g in mats if ((g @ R.entries) % p == (R.entries @ g) % p).all()
        )
        total += len(mats) // cent
    assert total == len(mats)


def test_invariant_factor_chains_divide():
    for chain in invariant_factor_chains(3, 3):
        for a, b in zip(chain, chain[1:]):
            assert not (b % a).coeffs


square_matrices = st.sampled_from([(2, 2), (2, 3), (3, 2), (5, 2), (3, 3)]).flatmap(
    lambda pn: st.tuples(
        st.just(pn[0]),
        st.lists(st.integers(0, pn[0] - 1), min_size=pn[1] ** 2, max_size=pn[1] ** 2).map(
            lambda xs, n=pn[1]: np.array(xs).reshape(n, n)
        ),
    )
)


@given(square_matrices)
def test_shift_is_fixed_and_orders_agree(pm):
    p, m = pm
    M = FpMatrix(p, m)
    if not M.is_invertible:
        return
    for x in all_vectors(p, M.dim):
        sh = shift_element(M, x)
        assert ((M @ sh) % p == sh).all()
        A = FpAffine(M, x)
        assert affine_order(A) == affine_order_by_iteration(A)
        if sh.any():
            assert matrix_order(M) * p <= p**M.dim


@given(square_matrices)
def test_determinant_matches_sympy(pm):
    p, m = pm
    assert FpMatrix(p, m).determinant == int(sympy.Matrix(m.tolist()).det()) % p


def test_lemma_bound_small_exhaustive():
    for p, n in [(2, 2), (2, 3), (3, 2)]:
        mats, _, _ = invertible_matrices(p, n)
        for m in mats:
            assert lcm_affine_orders(FpMatrix(p, m)) <= p**n


def test_poly_arithmetic():
    P = FpPoly(5, (1, 2, 3))
    Q = FpPoly(5, (4, 1))
    q, r = divmod(P * Q + FpPoly(5, (2,)), Q)
    assert q == P and r == FpPoly(5, (2,))
    assert (P - P).coeffs == ()
    assert P(2) == (1 + 4 + 12) % 5
