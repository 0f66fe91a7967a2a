import random

import pytest
from gmpy2 import mpq

from trainalg.exact_linalg import Matrix, Subspace
from trainalg.groups import PAIR_PRESETS, pair_preset, random_element
from trainalg.relations import (
    LAMBDA_SAMPLES, LinearRelation, ProjectivePoint, char_function, char_multiplicativity_check,
    chi_isotropy_defect, graph_of, identity_relation, relation_compose,
)
from trainalg.train import DoubleCoset, unit


def test_projective_points_are_canonical():
    assert ProjectivePoint(4, 2) == ProjectivePoint(2)
    assert ProjectivePoint(3, 0) == ProjectivePoint.parse("inf")
    assert ProjectivePoint.parse("5:2") == ProjectivePoint(mpq(5, 2))
    with pytest.raises(ValueError):
        ProjectivePoint(0, 0)


def test_graphs_compose_like_matrices():
    a = Matrix([[1, 2], [0, 1]])
    b = Matrix([[3, 0], [1, 1]])
    assert relation_compose(graph_of(a), graph_of(b)) == graph_of(a @ b)


def test_identity_relation_is_neutral():
    r = graph_of(Matrix([[1, 2, 3]]))
    assert relation_compose(r, identity_relation(3)) == r
    assert relation_compose(identity_relation(1), r) == r


def test_composition_through_degenerate_relations():
    # s = {(0, y)} kills everything; r = {(y, 0)} is defined only at 0
    s = LinearRelation(1, 1, Subspace.span([[0, 1]], 2))
    r = LinearRelation(1, 1, Subspace.span([[1, 0]], 2))
    assert relation_compose(s, r).dim == 0
    assert relation_compose(r, s).dim == 2


def test_chi_of_diagonal_coset():
    c = DoubleCoset.of("GL_R/O", 1, 1, [Matrix([[2]])])
    rel = char_function(c, ProjectivePoint(2))
    assert rel.graph.basis == Matrix([[1, 0, mpq(1, 2), 0], [0, 1, 0, 2]])


def test_distinct_diagonal_cosets_have_distinct_chi():
    a = DoubleCoset.of("GL_R/O", 1, 1, [Matrix([[2]])])
    b = DoubleCoset.of("GL_R/O", 1, 1, [Matrix([[3]])])
    assert any(char_function(a, lam) != char_function(b, lam) for lam in LAMBDA_SAMPLES)


@pytest.mark.parametrize("alpha", [0, 1, 2])
def test_chi_of_unit_is_identity_relation(alpha):
    u = unit(pair_preset("GL_R/O"), alpha)
    for lam in LAMBDA_SAMPLES:
        assert char_function(u, lam) == identity_relation(2 * alpha)


@pytest.mark.parametrize("name", [n for n in sorted(PAIR_PRESETS) if n != "mantle"])
def test_chi_multiplicative_and_half_dimensional(name):
    pair = pair_preset(name)
    rng = random.Random(name)
    k = pair.index_arity
    for _ in range(3):
        a, b, c = (tuple(rng.randint(0, 2) for _ in range(k)) for _ in range(3))
        g = DoubleCoset(pair, c, b, random_element(pair.G, 3, rng))
        h = DoubleCoset(pair, b, a, random_element(pair.G, 3, rng))
        assert char_multiplicativity_check(g, h)
        for lam in LAMBDA_SAMPLES:
            r = char_function(g, lam)
            assert 2 * r.dim == r.dom_dim + r.cod_dim
            if name in ("GL_R/O", "GL_C/U", "U/O"):
                assert r.dim == sum(b) + sum(c)


@pytest.mark.parametrize("name", ["GL_R/O", "GL_C/U", "U/O", "O/U", "U(2inf)/OxO"])
def test_chi_is_isotropic(name):
    pair = pair_preset(name)
    rng = random.Random(name + "iso")
    k = pair.index_arity
    for _ in range(3):
        a, b = (tuple(rng.randint(0, 2) for _ in range(k)) for _ in range(2))
        g = DoubleCoset(pair, b, a, random_element(pair.G, 3, rng))
        for lam in LAMBDA_SAMPLES:
            assert chi_isotropy_defect(g, lam) == 0


def random_relation(rng, dom, cod):
    k = rng.randint(0, dom + cod)
    vecs = [[rng.randint(-2, 2) for _ in range(dom + cod)] for _ in range(k)]
    return LinearRelation(dom, cod, Subspace.span(vecs, dom + cod))


def test_relation_composition_is_associative():
    rng = random.Random(17)
    for _ in range(40):
        a, b, c, d = (rng.randint(0, 3) for _ in range(4))
        r, s, t = random_relation(rng, a, b), random_relation(rng, b, c), random_relation(rng, c, d)
        assert relation_compose(t, relation_compose(s, r)) == relation_compose(relation_compose(t, s), r)


def test_diagonal_characteristic_functions_compose_to_the_product():
    glo = pair_preset("GL_R/O")
    two = DoubleCoset.of(glo, 1, 1, [Matrix([[2]])])
    three = DoubleCoset.of(glo, 1, 1, [Matrix([[3]])])
    six = DoubleCoset.of(glo, 1, 1, [Matrix([[6]])])
    for lam in LAMBDA_SAMPLES:
        comp = relation_compose(char_function(two, lam), char_function(three, lam))
        assert comp == char_function(six, lam)
        assert comp.graph.basis == Matrix([[1, 0, mpq(1, 6), 0], [0, 1, 0, 6]])


def test_chi_entries_are_rational_in_lambda():
    from trainalg.relations import chi_rationality_check
    glo = pair_preset("GL_R/O")
    rng = random.Random(3)
    verdicts = []
    for _ in range(8):
        a, b = rng.randint(0, 2), rng.randint(0, 2)
        g = DoubleCoset(glo, (b,), (a,), random_element(glo.G, rng.randint(1, 3), rng))
        verdicts.append(chi_rationality_check(g))
    assert False not in verdicts
    assert verdicts.count(True) >= 6


def test_unitary_pairs_need_the_conjugate_adjoint():
    from trainalg.relations import chi_block
    from trainalg.train import random_stabilizer
    pair = pair_preset("GL_C/U")
    rng = random.Random(4)
    lay = pair.layouts[0]
    transposed_mismatch = 0
    for _ in range(5):
        g = DoubleCoset(pair, (1,), (1,), random_element(pair.G, 3, rng))
        u, v = random_stabilizer(pair, (1,), 3, rng), random_stabilizer(pair, (1,), 3, rng)
        g2 = DoubleCoset(pair, (1,), (1,), u @ g.rep @ v)
        r = max(g.rows, g2.rows)
        lam = LAMBDA_SAMPLES[0]
        assert char_function(g, lam, r) == char_function(g2, lam, r)
        rels = []
        for c in (g, g2):
            m = c.matrices(r)[0]
            rels.append(chi_block(m, m.inverse().T, lay.head_coords(c.beta, r), lay.head_coords(c.alpha, r), lam))
        transposed_mismatch += rels[0] != rels[1]
    assert transposed_mismatch > 0
