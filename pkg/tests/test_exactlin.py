from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weakgalois.exactlin import (
    QQ,
    Constraint,
    Field,
    LinMap,
    Shape,
    Subspace,
    Term,
    compose,
    identity,
    image,
    inverse,
    is_bijective,
    kernel,
    quotient,
    rank,
    residual,
    solution_space,
    solve_constrained_map,
    swap,
    tensor,
    vector,
    zero_map,
)

F2, F3, F5 = Field.prime(2), Field.prime(3), Field.prime(5)


def m(k, rows, dom=None, cod=None):
    rows = [list(r) for r in rows]
    cod = (len(rows),) if cod is None else cod
    dom = (len(rows[0]),) if dom is None else dom
    return LinMap.from_rows(k, dom, cod, rows)


# -- scalars ---------------------------------------------------------------------------------


def test_rational_parse_lowest_terms():
    assert QQ.parse("6/4") == Fraction(3, 2)
    assert QQ.parse("-4/2") == -2
    assert QQ.format(QQ.parse("6/-4")) == "-3/2"


@pytest.mark.parametrize("bad", ["1/0", "abc", "1.5", "", "1/2/3"])
def test_malformed_rational(bad):
    with pytest.raises(ValueError):
        QQ.parse(bad)


def test_prime_field_residues():
    assert F5.parse("7") == 2
    assert F5.parse("-1") == 4
    assert F3.scalar(Fraction(1, 2)) == 2
    with pytest.raises(ValueError):
        F5.parse("1/2")


def test_non_prime_rejected():
    with pytest.raises(ValueError):
        Field.prime(4)


def test_float_refused():
    with pytest.raises(TypeError):
        QQ.scalar(0.5)


# -- shapes and maps -------------------------------------------------------------------------------


def test_swap_squared_is_identity():
    s = swap(QQ, 2, 2)
    assert s @ s == identity(QQ, 4)
    # hand-computed 4x4: e_i (x) e_j -> e_j (x) e_i
    assert s.mat.tolist() == [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]


def test_identity_and_zero_composition():
    i2 = identity(QQ, 2)
    assert i2 @ i2 == i2
    f = m(QQ, [[1, 2], [3, 4]])
    assert (f @ zero_map(QQ, (2,), (2,))).is_zero()


def test_tensor_identity_blocks():
    assert tensor(identity(QQ, 2), identity(QQ, 3)) == identity(QQ, 6)


def test_tensor_with_counit_by_hand():
    f = m(QQ, [[1, 2], [3, 4]])
    eps = m(QQ, [[5, 7]], cod=())
    out = tensor(f, eps)
    # row i, column (j, l) is f[i, j] * eps[l]
    assert out.mat.tolist() == [[5, 7, 10, 14], [15, 21, 20, 28]]
    assert out.codomain == Shape((2,))
    assert out.domain == Shape((2, 2))


def test_compose_dimension_mismatch():
    with pytest.raises(ValueError):
        compose(identity(QQ, 2), identity(QQ, 3))


def test_shape_index_roundtrip():
    s = Shape((2, 3, 4))
    for i in range(s.dim):
        assert s.index(s.decode(i)) == i
    assert s.index((1, 2, 3)) == 1 * 12 + 2 * 4 + 3


# -- subspaces and quotients -----------------------------------------------------------------


def test_kernel_of_zero_and_image_of_identity():
    assert kernel(zero_map(QQ, (3,), (2,))).dim == 3
    assert image(identity(QQ, 3)) == Subspace.full(QQ, (3,))


def test_kernel_of_ones_matrix():
    ker = kernel(m(QQ, [[1, 1], [1, 1]]))
    assert ker.dim == 1
    assert ker == Subspace.from_vectors(QQ, (2,), [[1, -1]])


def test_rref_basis_pivots_increasing():
    sub = Subspace.from_vectors(QQ, (4,), [[0, 2, 4, 2], [1, 1, 1, 1], [1, 2, 3, 2]])
    assert list(sub.pivots) == sorted(sub.pivots)
    for r, p in enumerate(sub.pivots):
        assert sub.basis[r, p] == 1
        assert all(sub.basis[s, p] == 0 for s in range(sub.dim) if s != r)


def test_quotient_trivial_and_full():
    q = quotient(Shape((2,)), Subspace.zero(QQ, (2,)))
    assert q.proj == identity(QQ, 2)
    assert quotient(Shape((3,)), Subspace.full(QQ, (3,))).dim == 0


def test_quotient_by_difference():
    q = quotient(Shape((2,)), Subspace.from_vectors(QQ, (2,), [[1, -1]]))
    assert q.dim == 1
    assert q.proj @ q.sect == identity(QQ, 1)
    # e_1 and e_2 have the same class
    assert q.proj.mat[0, 0] == q.proj.mat[0, 1]


def test_subspace_lattice():
    a = Subspace.from_vectors(QQ, (3,), [[1, 0, 0], [0, 1, 0]])
    b = Subspace.from_vectors(QQ, (3,), [[0, 1, 0], [0, 0, 1]])
    assert (a + b).dim == 3
    assert a.intersect(b) == Subspace.from_vectors(QQ, (3,), [[0, 1, 0]])
    assert a.intersect(b) <= a


def test_bijective_and_inverse():
    f = m(QQ, [[2, 1], [1, 1]])
    assert is_bijective(f)
    assert inverse(f) @ f == identity(QQ, 2)
    with pytest.raises(ZeroDivisionError):
        inverse(m(QQ, [[1, 1], [1, 1]]))


def test_prime_field_kernel():
    # over F_2 the matrix [[1,1],[1,1]] still has kernel span{(1,1)}
    ker = kernel(m(F2, [[1, 1], [1, 1]]))
    assert ker == Subspace.from_vectors(F2, (2,), [[1, 1]])


# -- solver ------------------------------------------------------------------------------------


def test_solver_identity_constraint():
    x = solve_constrained_map((2,), (2,), [Constraint([Term()], rhs=identity(QQ, 2))], QQ)
    assert x == identity(QQ, 2)


def test_solver_vector_constraint_substitution():
    v = vector(QQ, (3,), [1, 2, 3])
    w = vector(QQ, (2,), [5, -1])
    x = solve_constrained_map((3,), (2,), [Constraint([Term(right=v)], rhs=w)], QQ)
    assert x @ v == w


def test_solver_inconsistent():
    v = vector(QQ, (2,), [1, 0])
    cons = [
        Constraint([Term(right=v)], rhs=vector(QQ, (1,), [1])),
        Constraint([Term(right=v)], rhs=vector(QQ, (1,), [2])),
    ]
    assert solve_constrained_map((2,), (1,), cons, QQ) is None


def test_solver_tensor_terms_commutant():
    # maps X on k^2 commuting with a fixed nilpotent N: X N - N X = 0
    n = m(QQ, [[0, 1], [0, 0]])
    cons = [Constraint([Term(right=n), Term(left=n, coeff=-1)])]
    x, kern = solution_space((2,), (2,), cons, QQ)
    assert x.is_zero()
    assert len(kern) == 2  # span{I, N}
    for k_ in kern:
        assert k_ @ n == n @ k_


def test_solver_pre_post_padding():
    # unknown X : k^2 -> k^2 with (I_2 (x) X) = s on the second factor only
    target = tensor(identity(QQ, 2), m(QQ, [[0, 1], [1, 0]]))
    x = solve_constrained_map((2,), (2,), [Constraint([Term(pre=2)], rhs=target)], QQ)
    assert x == m(QQ, [[0, 1], [1, 0]])
    assert solve_constrained_map((2,), (2,), [Constraint([Term(post=2)], rhs=target)], QQ) is None


# -- properties ---------------------------------------------------------------------------------

small = st.integers(min_value=-3, max_value=3)


@st.composite
def matrices(draw, max_dim=4):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    rows = draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    p = draw(st.sampled_from([None, 2, 3, 5]))
    k = QQ if p is None else Field.prime(p)
    return LinMap.from_rows(k, (c,), (r,), rows)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(f):
    assert rank(f) + kernel(f).dim == f.domain.dim
    inc = kernel(f).inclusion()
    assert (f @ inc).is_zero()


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_quotient_laws(f):
    rel = image(f)
    q = quotient(f.codomain, rel)
    assert q.proj @ q.sect == identity(f.field, q.dim)
    assert q.dim == f.codomain.dim - rel.dim
    # sect o proj - id has image inside the relators
    diff = q.sect @ q.proj - identity(f.field, f.codomain.dim)
    assert rel.contains_image(diff)
    assert (q.proj @ rel.inclusion()).is_zero()


@settings(max_examples=40, deadline=None)
@given(matrices(3), st.data())
def test_solver_zero_residual(f, data):
    # find X with X o f = g for g in the row space reachable through f
    k = f.field
    y_rows = data.draw(st.lists(st.lists(small, min_size=f.codomain.dim, max_size=f.codomain.dim), min_size=2, max_size=2))
    y = LinMap.from_rows(k, f.codomain, (2,), y_rows)
    g = y @ f
    cons = [Constraint([Term(right=f)], rhs=g)]
    x = solve_constrained_map(f.codomain, (2,), cons, k)
    assert x is not None
    assert residual(cons[0], x).is_zero()
    assert x @ f == g


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=4), st.data())
def test_kronecker_index_roundtrip(factors, data):
    s = Shape(tuple(factors))
    idx = data.draw(st.integers(0, s.dim - 1))
    assert s.index(s.decode(idx)) == idx
    multi = s.decode(idx)
    # basis vector of e_i (x) e_j ... equals the kron of the factors
    vec = np.array([1])
    for d, i in zip(factors, multi):
        e = np.zeros(d, dtype=np.int64)
        e[i] = 1
        vec = np.kron(vec, e)
    assert int(np.argmax(vec)) == idx


@settings(max_examples=30, deadline=None)
@given(matrices(3), matrices(3), matrices(3))
def test_tensor_associative(f, g, h):
    if not (f.field == g.field == h.field):
        return
    assert tensor(tensor(f, g), h).mat.tolist() == tensor(f, tensor(g, h)).mat.tolist()
