"""Exact rational linear algebra: ranks, (generalized) inverses,
projectors, consistent solves, and the eigenvalue bridge to floats."""

from fractions import Fraction

import numpy as np
import pytest

from orthoplan import ratmat
from orthoplan.errors import NotSymmetric


def random_rational(rng, rows, cols, den=3):
    return ratmat.rational([[Fraction(int(rng.integers(-4, 5)), int(rng.integers(1, den + 1)))
                             for _ in range(cols)] for _ in range(rows)])


def random_low_rank(rng, n, m, r):
    a = random_rational(rng, n, r)
    b = random_rational(rng, r, m)
    return a @ b


# ---------------------------------------------------------------------------
# constructors and predicates

def test_constructors():
    m = ratmat.rational([[1, 2], [3, 4]])
    assert m[0, 1] == Fraction(2) and isinstance(m[0, 1], Fraction)
    v = ratmat.vector([1, 2, 3])
    assert v.shape == (3, 1)
    assert (ratmat.eye(2) == ratmat.rational([[1, 0], [0, 1]])).all()
    assert ratmat.ones(2, 3).sum() == 6
    assert ratmat.zeros(2, 2).sum() == 0


def test_predicates_return_plain_bool():
    z = ratmat.zeros(2, 2)
    for val in (ratmat.is_zero(z), ratmat.is_symmetric(z), ratmat.is_idempotent(z)):
        assert val is True
    assert ratmat.is_zero(ratmat.eye(2)) is False


def test_to_float():
    f = ratmat.to_float(ratmat.rational([[Fraction(1, 2), 3]]))
    assert f.dtype == np.float64 and f[0, 0] == 0.5


# ---------------------------------------------------------------------------
# rank / inverse

def test_rank():
    assert ratmat.rank(ratmat.eye(3)) == 3
    assert ratmat.rank(ratmat.ones(3, 3)) == 1
    assert ratmat.rank(ratmat.zeros(2, 2)) == 0
    rng = np.random.default_rng(7)
    m = random_low_rank(rng, 5, 4, 2)
    assert ratmat.rank(m) <= 2


def test_inverse_exact():
    hilbert = ratmat.rational([[Fraction(1, i + j + 1) for j in range(3)] for i in range(3)])
    inv = ratmat.inverse(hilbert)
    assert (hilbert @ inv == ratmat.eye(3)).all()
    # the 3x3 Hilbert inverse is integral
    assert inv[0, 0] == 9 and inv[2, 2] == 180


def test_inverse_errors():
    with pytest.raises(ValueError):
        ratmat.inverse(ratmat.ones(2, 3))
    with pytest.raises(ValueError):
        ratmat.inverse(ratmat.ones(2, 2))


# ---------------------------------------------------------------------------
# generalized inverse

def test_g_inverse_diagonal():
    m = ratmat.rational([[2, 0], [0, 0]])
    g = ratmat.g_inverse(m)
    assert g[0, 0] == Fraction(1, 2) and ratmat.is_zero(g - ratmat.rational([[Fraction(1, 2), 0], [0, 0]]))


@pytest.mark.parametrize("seed", range(20))
def test_g_inverse_property(seed):
    rng = np.random.default_rng(seed)
    m = random_low_rank(rng, 5, 4, int(rng.integers(1, 4)))
    for reverse in (False, True):
        g = ratmat.g_inverse(m, reverse=reverse)
        assert (m @ g @ m == m).all()


# ---------------------------------------------------------------------------
# consistent solves

@pytest.mark.parametrize("seed", range(25))
def test_solve_consistent_matches_g_inverse_products(seed):
    """Solutions may differ between pivot orders, but P @ Z is pinned for
    any P whose rows lie in the row space of M (here P = M itself)."""
    rng = np.random.default_rng(seed)
    a = random_rational(rng, 4, 3)
    m = a.T @ a
    w = random_rational(rng, 3, 2)
    rhs = m @ w
    z1 = ratmat.solve_consistent(m, rhs)
    z2 = ratmat.solve_consistent(m, rhs, reverse=True)
    assert (m @ z1 == rhs).all()
    assert (m @ z2 == rhs).all()
    assert (m @ z1 == m @ z2).all()
    g = ratmat.g_inverse(m)
    assert (m @ (g @ rhs) == rhs).all()


def test_solve_consistent_inconsistent_raises():
    m = ratmat.rational([[1, 1], [1, 1]])
    rhs = ratmat.rational([[1], [0]])
    with pytest.raises(ArithmeticError):
        ratmat.solve_consistent(m, rhs)


def test_solve_consistent_shape_error():
    with pytest.raises(ValueError):
        ratmat.solve_consistent(ratmat.eye(2), ratmat.rational([[1], [2], [3]]))


def test_solve_consistent_fractional_entries():
    m = ratmat.rational([[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 3), Fraction(2, 9)]])
    w = ratmat.rational([[Fraction(5, 7)], [Fraction(-2, 3)]])
    rhs = m @ w
    z = ratmat.solve_consistent(m, rhs)
    assert (m @ z == rhs).all()


# ---------------------------------------------------------------------------
# projectors

@pytest.mark.parametrize("seed", range(10))
def test_projector_properties(seed):
    rng = np.random.default_rng([11, seed])
    m = random_low_rank(rng, 6, 3, int(rng.integers(1, 4)))
    p = ratmat.projector(m)
    assert ratmat.is_symmetric(p) and ratmat.is_idempotent(p)
    assert (p @ m == m).all()
    # invariant to the g-inverse route
    assert (p == ratmat.projector(m, reverse=True)).all()


def test_projector_empty_columns():
    m = np.empty((3, 0), dtype=object)
    assert ratmat.is_zero(ratmat.projector(m))


def test_projector_decompose():
    rng = np.random.default_rng(3)
    u = random_rational(rng, 6, 2)
    v = random_rational(rng, 6, 2)
    pz = ratmat.projector_decompose(u, v)
    pv = ratmat.projector(v)
    assert ratmat.is_zero(pv @ pz)
    assert ratmat.is_idempotent(pz)


# ---------------------------------------------------------------------------
# eigenvalues

def test_sym_eigenvalues():
    m = ratmat.rational([[2, 0], [0, 5]])
    assert ratmat.sym_eigenvalues(m) == [2.0, 5.0]
    w = ratmat.sym_eigenvalues(ratmat.ones(3, 3))
    assert abs(w[0]) < 1e-9 and abs(w[2] - 3.0) < 1e-9


def test_sym_eigenvalues_requires_symmetry():
    with pytest.raises(NotSymmetric):
        ratmat.sym_eigenvalues(ratmat.rational([[0, 1], [0, 0]]))
