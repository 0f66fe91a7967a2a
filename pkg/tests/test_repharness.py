import math
import random

import numpy as np
import pytest
from gmpy2 import mpq

from trainalg.exact_linalg import Matrix, Subspace, subspace_equal
from trainalg.groups import GroupElement, cayley_sample, pair_preset, random_element
from trainalg.repharness import (
    SphericalParams, TensorRep, TruncationError, apply_rho, direct_sum, fixed_subspace, rho,
    rho_bar, spherical_character_check, spherical_phi, theta_weak_limit_check, verify_repcat,
)
from trainalg.train import DoubleCoset, coset_compose, random_stabilizer, unit


def e(n, *idx):
    rep = TensorRep(n, len(idx))
    v = [0] * rep.total_dim
    v[rep.index(idx)] = 1
    return v


def test_tensor_index_round_trip():
    rep = TensorRep(4, 3)
    for k in range(rep.total_dim):
        assert rep.index(rep.multi(k)) == k


def test_natural_representation_fixed_vectors():
    fd = fixed_subspace(TensorRep(5, 1), 2)
    assert subspace_equal(fd.subspace, Subspace.span([e(5, 0), e(5, 1)], 5))


def test_degree_two_fixed_vectors_at_level_zero():
    fd = fixed_subspace(TensorRep(4, 2), 0)
    trace = [sum(x) for x in zip(*(e(4, i, i) for i in range(4)))]
    assert subspace_equal(fd.subspace, Subspace.span([trace], 16))


def test_degree_two_fixed_vectors_at_level_one():
    fd = fixed_subspace(TensorRep(4, 2), 1)
    tail = [sum(x) for x in zip(*(e(4, i, i) for i in range(1, 4)))]
    assert subspace_equal(fd.subspace, Subspace.span([e(4, 0, 0), tail], 16))


@pytest.mark.parametrize("n", range(4, 9))
@pytest.mark.parametrize("alpha", [0, 1, 2])
def test_degree_two_dimension_count(n, alpha):
    # head (x) head gives alpha**2 vectors, the tail trace one more; mixed tensors have none
    assert fixed_subspace(TensorRep(n, 2), alpha).dim == alpha ** 2 + 1


@pytest.mark.parametrize("n,alpha", [(5, 0), (5, 2), (6, 1)])
def test_adjacent_generators_cut_the_same_kernel(n, alpha):
    rep = TensorRep(n, 2)
    a = fixed_subspace(rep, alpha)
    b = fixed_subspace(rep, alpha, all_generators=True)
    assert a.subspace.basis == b.subspace.basis


def test_projector_is_orthogonal_and_idempotent():
    fd = fixed_subspace(TensorRep(5, 2), 1)
    P = fd.projector
    assert P @ P == P
    assert P.T == P
    for v in fd.subspace.vectors():
        assert P.apply(v) == tuple(v)


def test_fixed_vectors_are_fixed_by_sampled_orthogonal_tails():
    rep = TensorRep(5, 2)
    fd = fixed_subspace(rep, 2)
    glo = pair_preset("GL_R/O")
    rng = random.Random(3)
    for _ in range(3):
        u = random_stabilizer(glo, (2,), 3, rng)
        for v in fd.subspace.vectors():
            assert apply_rho(u, rep, v) == tuple(v)


def test_out_of_range_alpha():
    with pytest.raises(ValueError):
        fixed_subspace(TensorRep(3, 2), 4)


def test_rho_is_a_homomorphism():
    glo = pair_preset("GL_R/O")
    rng = random.Random(4)
    rep = TensorRep(3, 2)
    for _ in range(3):
        g, h = random_element(glo.G, 3, rng), random_element(glo.G, 2, rng)
        assert rho(g @ h, rep) == rho(g, rep) @ rho(h, rep)
        v = [mpq(rng.randint(-3, 3)) for _ in range(rep.total_dim)]
        assert apply_rho(g, rep, v) == rho(g, rep).apply(v)
    assert rho(GroupElement.identity(glo.G), rep).is_identity()


def test_rho_of_a_swap_permutes_basis_tensors():
    swap = GroupElement.from_matrices(pair_preset("GL_R/O").G, [Matrix([[0, 1], [1, 0]])])
    r = rho(swap, TensorRep(3, 2))
    for i in range(3):
        for j in range(3):
            s = {0: 1, 1: 0}.get
            img = e(3, s(i, i), s(j, j))
            assert tuple(r.col(3 * i + j)) == tuple(img)


def test_support_overflow():
    g = GroupElement.from_matrices(pair_preset("GL_R/O").G, [Matrix([[2, 1], [1, 1]])])
    with pytest.raises(TruncationError):
        rho(g, TensorRep(1, 2))


def test_rho_bar_of_identity_and_degree_one_corner():
    glo = pair_preset("GL_R/O")
    rep = TensorRep(6, 2)
    assert rho_bar(GroupElement.identity(glo.G), 1, 1, rep).is_identity()
    g = random_element(glo.G, 3, random.Random(9))
    r1 = rho_bar(g, 2, 1, TensorRep(6, 1))
    assert r1 == g.ops[0].padded(3).sub([0], [0, 1])


def test_rho_bar_is_two_sided_invariant():
    glo = pair_preset("GL_R/O")
    rng = random.Random(11)
    rep = TensorRep(7, 2)
    g = random_element(glo.G, 3, rng)
    base = rho_bar(g, 1, 2, rep)
    for _ in range(3):
        h2, h1 = random_stabilizer(glo, (2,), 3, rng), random_stabilizer(glo, (1,), 3, rng)
        assert rho_bar(h2 @ g @ h1, 1, 2, rep) == base


def test_repcat_identity_and_truncation_floor(glo):
    u = unit(glo, 1)
    assert verify_repcat(u, u, TensorRep(4, 2)).passed
    g = DoubleCoset.of(glo, 1, 1, [Matrix([[2, 1, 0], [1, 1, 0], [0, 0, 2]])])
    need = coset_compose(g, g).rep.support
    assert need == 5
    with pytest.raises(TruncationError) as info:
        verify_repcat(g, g, TensorRep(need - 1, 2))
    assert info.value.min_n == need
    assert verify_repcat(g, g, TensorRep(need, 1)).passed


def test_repcat_degree_one(glo):
    rng = random.Random(12)
    for _ in range(20):
        a, b, c = (rng.randint(0, 2) for _ in range(3))
        g = DoubleCoset(glo, (c,), (b,), random_element(glo.G, 3, rng))
        h = DoubleCoset(glo, (b,), (a,), random_element(glo.G, 3, rng))
        assert verify_repcat(g, h, TensorRep(10, 1)).passed


def test_repcat_degree_two_truncation_defect_decays(glo):
    # rho_bar(diag 2) on the trace line is (n+3)/n, the product (n+6)/n
    g = DoubleCoset.of(glo, 0, 0, [Matrix([[2]])])
    for n in (4, 10, 20):
        r = verify_repcat(g, g, TensorRep(n, 2))
        assert not r.passed
        assert r.defect == pytest.approx(9 / n ** 2, rel=1e-12)


def test_repcat_degree_two_in_the_square_summable_model(glo):
    rng = random.Random(13)
    for _ in range(10):
        a, b, c = (rng.randint(0, 1) for _ in range(3))
        g = DoubleCoset(glo, (c,), (b,), random_element(glo.G, 3, rng))
        h = DoubleCoset(glo, (b,), (a,), random_element(glo.G, 3, rng))
        assert verify_repcat(g, h, TensorRep(10, 2), model="ell2").passed


def test_theta_limit_degree_one_and_two():
    r1 = theta_weak_limit_check(TensorRep(8, 1), 2, range(1, 4))
    assert r1.passed and all(r1.identity_at.values())
    r2 = theta_weak_limit_check(TensorRep(8, 2), 1, range(1, 4))
    assert r2.stable_from == 1 and r2.equals_identity
    with pytest.raises(TruncationError):
        theta_weak_limit_check(TensorRep(8, 2), 1, range(1, 5))


def test_spherical_examples():
    one = GroupElement.identity(pair_preset("GL_R/O").G)
    assert spherical_phi(SphericalParams((1.0, -2.0), 0.3, 1), one) == 1
    assert spherical_phi(SphericalParams((0.0,)), Matrix([[2]])) == pytest.approx(2 / math.sqrt(5), abs=1e-12)
    assert spherical_phi(SphericalParams((), 0.0, 1), Matrix([[-1]])) == -1


def test_spherical_invariance_under_orthogonal_factors():
    rng = random.Random(21)
    glo = pair_preset("GL_R/O")
    params = SphericalParams((0.7, -1.3), 0.4, 1)
    for _ in range(5):
        g = random_element(glo.G, 3, rng)
        u = cayley_sample("Q", 3, rng.randint(0, 10 ** 6)).padded(3)
        v = cayley_sample("Q", 3, rng.randint(0, 10 ** 6)).padded(3)
        gm = g.ops[0].padded(3)
        assert abs(spherical_phi(params, u @ gm @ v) - spherical_phi(params, gm)) < 1e-9


def test_spherical_character_on_disjoint_blocks():
    p = SphericalParams((1.0,), 0.5, 0)
    assert spherical_character_check(p, Matrix([[2]]), Matrix([[3]]))
    p = SphericalParams((1.0,), 0.5, 1)
    assert spherical_character_check(p, Matrix([[-2]]), Matrix([[-3]]))
    assert direct_sum(Matrix([[2]]), Matrix([[3]])).core == Matrix([[2, 0], [0, 3]])


def test_spherical_rejects_singular_and_complex():
    with pytest.raises(ValueError):
        spherical_phi(SphericalParams(), Matrix([[0]]))


def test_spherical_matches_numpy_oracle():
    # independent evaluation through eigenvalues of g^T g
    rng = random.Random(5)
    glo = pair_preset("GL_R/O")
    params = SphericalParams((0.25, 1.5), -0.75, 1)
    for _ in range(5):
        g = random_element(glo.G, 3, rng).ops[0].padded(3)
        a = np.array([[float(x) for x in r] for r in g.entries()])
        lams = np.sqrt(np.linalg.eigvalsh(a.T @ a))
        det = np.linalg.det(a)
        val = abs(det) ** (1j * params.a) * np.sign(det) ** params.sigma
        for s in params.s:
            for lam in lams:
                val *= np.sqrt((1 + 1j * s) / 2 * lam + (1 - 1j * s) / 2 / lam) ** -1
        assert abs(val - spherical_phi(params, g)) < 1e-9
