"""Exact linear algebra over Q and F_p with tensor-factored shapes.

Every structure map in the package is a :class:`LinMap`: a dense matrix whose
domain and codomain carry a list of tensor factors.  Basis vectors of a tensor
product are indexed row-major (leftmost factor most significant), so
``index(e_i (x) e_j) = i * dim2 + j`` and ``tensor(f, g)`` is ``numpy.kron``.

Rationals are :class:`fractions.Fraction` (or plain ``int``) stored in object
arrays; residues mod p are ``int64`` arrays reduced to ``0..p-1``.  Nothing in
here ever touches a float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Field",
    "QQ",
    "Shape",
    "LinMap",
    "Subspace",
    "QuotientSpace",
    "Term",
    "Constraint",
    "compose",
    "tensor",
    "identity",
    "zero_map",
    "swap",
    "permute_factors",
    "vector",
    "kernel",
    "image",
    "rank",
    "is_bijective",
    "inverse",
    "quotient",
    "span",
    "rref",
    "solve_constrained_map",
    "solution_space",
]

# int64 is safe while n * p**2 stays far below 2**63
_INT64_PRIME_LIMIT = 1 << 24


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    return all(p % d for d in range(3, math.isqrt(p) + 1, 2))


@dataclass(frozen=True)
class Field:
    """The ground field: rationals when ``p`` is None, else the prime field F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(int(p))

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def dtype(self):
        if self.p is not None and self.p < _INT64_PRIME_LIMIT:
            return np.int64
        return object

    def __str__(self):
        return "Q" if self.p is None else f"Fp:{self.p}"

    # -- scalars -------------------------------------------------------------

    def scalar(self, x):
        """Coerce an int, Fraction or scalar string into a field element."""
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (bool, float)):
            raise TypeError(f"refusing inexact scalar {x!r}")
        if self.p is None:
            x = Fraction(x)
            return int(x) if x.denominator == 1 else x
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def parse(self, s: str):
        if not isinstance(s, str):
            raise ValueError(f"scalar must be a string, got {s!r}")
        text = s.strip()
        try:
            if self.p is None:
                if "/" in text:
                    num, den = text.split("/")
                    num, den = int(num), int(den)
                    if den == 0:
                        raise ValueError("zero denominator")
                    return self.scalar(Fraction(num, den))
                return int(text)
            if "/" in text:
                raise ValueError("fractions are not residues")
            return int(text) % self.p
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed scalar {s!r}: {exc}") from None

    def format(self, x) -> str:
        x = self.scalar(x)
        return str(x)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.p)

    def norm(self, x):
        """Normalise a scalar produced by ring operations."""
        if self.p is None:
            if isinstance(x, Fraction) and x.denominator == 1:
                return int(x)
            return x
        return int(x) % self.p

    # -- arrays --------------------------------------------------------------

    def zeros(self, shape) -> np.ndarray:
        if self.dtype is object:
            out = np.empty(shape, dtype=object)
            out.fill(0)
            return out
        return np.zeros(shape, dtype=self.dtype)

    def array(self, data) -> np.ndarray:
        arr = np.array(data, dtype=object)
        if arr.size:
            arr = np.vectorize(self.scalar, otypes=[object])(arr)
        return arr.astype(self.dtype) if self.dtype is not object else arr

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        if self.p is None:
            return arr
        return arr % self.p

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = 1
        return out


QQ = Field()


@dataclass(frozen=True)
class Shape:
    """Ordered tensor factors; an empty factor list is the ground field k."""

    factors: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(f) for f in self.factors))
        # zero factors are allowed so that trivial subspaces and quotients have a shape
        if any(f < 0 for f in self.factors):
            raise ValueError(f"tensor factors must be non-negative, got {self.factors}")

    @classmethod
    def of(cls, *factors) -> "Shape":
        out = []
        for f in factors:
            if isinstance(f, Shape):
                out.extend(f.factors)
            else:
                out.append(int(f))
        return cls(tuple(out))

    @property
    def dim(self) -> int:
        return math.prod(self.factors)

    def __len__(self):
        return len(self.factors)

    def __add__(self, other: "Shape") -> "Shape":
        return Shape(self.factors + other.factors)

    def index(self, multi: Sequence[int]) -> int:
        if len(multi) != len(self.factors):
            raise ValueError("multi-index length does not match shape")
        idx = 0
        for i, f in zip(multi, self.factors):
            if not 0 <= i < f:
                raise IndexError(f"index {i} out of range for factor {f}")
            idx = idx * f + i
        return idx

    def decode(self, idx: int) -> tuple:
        if not 0 <= idx < self.dim:
            raise IndexError(idx)
        out = []
        for f in reversed(self.factors):
            idx, r = divmod(idx, f)
            out.append(r)
        return tuple(reversed(out))

    def __str__(self):
        return "(x)".join(str(f) for f in self.factors) or "k"


def _as_shape(s) -> Shape:
    if isinstance(s, Shape):
        return s
    if isinstance(s, int):
        return Shape((s,))
    return Shape(tuple(s))


@dataclass(frozen=True, eq=False)
class LinMap:
    """A linear map ``domain -> codomain`` stored as a (dim cod) x (dim dom) matrix."""

    field: Field
    domain: Shape
    codomain: Shape
    mat: np.ndarray = dc_field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "domain", _as_shape(self.domain))
        object.__setattr__(self, "codomain", _as_shape(self.codomain))
        mat = np.asarray(self.mat)
        if mat.dtype != self.field.dtype:
            mat = mat.astype(self.field.dtype)
        mat = self.field.reduce(mat)
        if mat.shape != (self.codomain.dim, self.domain.dim):
            raise ValueError(
                f"matrix shape {mat.shape} does not match "
                f"{self.codomain} <- {self.domain}"
            )
        mat.flags.writeable = False
        object.__setattr__(self, "mat", mat)

    @classmethod
    def from_rows(cls, field: Field, domain, codomain, rows) -> "LinMap":
        dom, cod = _as_shape(domain), _as_shape(codomain)
        arr = field.array(rows) if len(rows) else field.zeros((cod.dim, dom.dim))
        return cls(field, dom, cod, arr.reshape(cod.dim, dom.dim))

    @classmethod
    def from_columns(cls, field: Field, domain, codomain, columns) -> "LinMap":
        dom, cod = _as_shape(domain), _as_shape(codomain)
        if not len(columns):
            return zero_map(field, dom, cod)
        arr = field.array(columns).reshape(dom.dim, cod.dim)
        return cls(field, dom, cod, arr.T.copy())

    @property
    def shape(self):
        return self.mat.shape

    def column(self, j: int) -> np.ndarray:
        return self.mat[:, j]

    def __matmul__(self, other: "LinMap") -> "LinMap":
        return compose(self, other)

    def __add__(self, other: "LinMap") -> "LinMap":
        _check_same(self, other)
        return LinMap(self.field, self.domain, self.codomain, self.mat + other.mat)

    def __sub__(self, other: "LinMap") -> "LinMap":
        _check_same(self, other)
        return LinMap(self.field, self.domain, self.codomain, self.mat - other.mat)

    def __neg__(self) -> "LinMap":
        return LinMap(self.field, self.domain, self.codomain, -self.mat)

    def scale(self, c) -> "LinMap":
        c = self.field.scalar(c)
        return LinMap(self.field, self.domain, self.codomain, self.mat * c)

    def __eq__(self, other):
        if not isinstance(other, LinMap):
            return NotImplemented
        return self.mat.shape == other.mat.shape and bool(np.all(self.mat == other.mat))

    __hash__ = None

    def is_zero(self) -> bool:
        return not np.any(self.mat != 0)

    def reshaped(self, domain=None, codomain=None) -> "LinMap":
        """Same matrix, re-declared factor shapes (total dims must agree)."""
        return LinMap(
            self.field,
            self.domain if domain is None else _as_shape(domain),
            self.codomain if codomain is None else _as_shape(codomain),
            self.mat,
        )

    def transpose(self) -> "LinMap":
        return LinMap(self.field, self.codomain, self.domain, self.mat.T.copy())

    def apply(self, vec) -> np.ndarray:
        v = np.asarray(vec)
        return self.field.reduce(self.mat @ v)

    def rows_at(self, rows: Sequence[int], codomain=None) -> "LinMap":
        cod = Shape((len(rows),)) if codomain is None else _as_shape(codomain)
        return LinMap(self.field, self.domain, cod, self.mat[list(rows), :])

    def cols_at(self, cols: Sequence[int], domain=None) -> "LinMap":
        dom = Shape((len(cols),)) if domain is None else _as_shape(domain)
        return LinMap(self.field, dom, self.codomain, self.mat[:, list(cols)])

    def nonzeros(self):
        rows, cols = np.nonzero(self.mat != 0)
        return [(int(r), int(c), self.mat[r, c]) for r, c in zip(rows, cols)]

    def to_strings(self) -> list:
        return [[self.field.format(x) for x in row] for row in self.mat]

    def __repr__(self):
        return f"LinMap({self.codomain} <- {self.domain} over {self.field})"


def _check_same(f: LinMap, g: LinMap):
    if f.mat.shape != g.mat.shape:
        raise ValueError(f"shape mismatch: {f!r} vs {g!r}")
    if f.field != g.field:
        raise ValueError("field mismatch")


def compose(f: LinMap, *rest: LinMap) -> LinMap:
    """``compose(f, g, h) = f o g o h``."""
    out = f
    for g in rest:
        if out.domain.dim != g.codomain.dim:
            raise ValueError(
                f"cannot compose {out!r} after {g!r}: "
                f"{out.domain.dim} != {g.codomain.dim}"
            )
        if out.field != g.field:
            raise ValueError("field mismatch")
        out = LinMap(out.field, g.domain, out.codomain, out.mat @ g.mat)
    return out


def tensor(*maps: LinMap) -> LinMap:
    if not maps:
        raise ValueError("tensor of nothing")

    def _kron(f: LinMap, g: LinMap) -> LinMap:
        if f.field != g.field:
            raise ValueError("field mismatch")
        return LinMap(f.field, f.domain + g.domain, f.codomain + g.codomain, np.kron(f.mat, g.mat))

    return reduce(_kron, maps)


def identity(field: Field, *factors) -> LinMap:
    s = Shape.of(*factors)
    return LinMap(field, s, s, field.eye(s.dim))


def zero_map(field: Field, domain, codomain) -> LinMap:
    dom, cod = _as_shape(domain), _as_shape(codomain)
    return LinMap(field, dom, cod, field.zeros((cod.dim, dom.dim)))


def vector(field: Field, shape, values) -> LinMap:
    """The map ``k -> V`` picking out a vector."""
    s = _as_shape(shape)
    arr = np.asarray(values)
    if arr.dtype != field.dtype:
        arr = field.array(list(arr))
    return LinMap(field, Shape(), s, arr.reshape(s.dim, 1))


def permute_factors(field: Field, shape, perm: Sequence[int]) -> LinMap:
    """Map ``V_0 (x) ... (x) V_{n-1} -> V_{perm[0]} (x) ... (x) V_{perm[n-1]}``."""
    s = _as_shape(shape)
    if sorted(perm) != list(range(len(s.factors))):
        raise ValueError(f"not a permutation: {perm}")
    target = Shape(tuple(s.factors[i] for i in perm))
    idx = np.arange(s.dim).reshape(s.factors if s.factors else ())
    moved = np.transpose(idx, perm).reshape(-1) if s.factors else idx.reshape(-1)
    mat = field.zeros((s.dim, s.dim))
    # moved[new_index] = old_index
    mat[np.arange(s.dim), moved] = 1
    return LinMap(field, s, target, mat)


def swap(field: Field, left, right) -> LinMap:
    """The flip ``V (x) W -> W (x) V`` for (possibly multi-factor) V, W."""
    v, w = _as_shape(left), _as_shape(right)
    nv, nw = len(v.factors), len(w.factors)
    perm = list(range(nv, nv + nw)) + list(range(nv))
    return permute_factors(field, v + w, perm)


# -- row reduction -------------------------------------------------------------


def _row_dicts(field: Field, mat: np.ndarray):
    for row in mat:
        nz = np.nonzero(row != 0)[0]
        yield {int(j): row[j] for j in nz}


class _Echelon:
    """Incrementally maintained reduced row echelon basis (rows as dicts)."""

    def __init__(self, field: Field):
        self.field = field
        self.rows: dict[int, dict] = {}

    def reduce(self, row: dict) -> dict:
        f = self.field
        r = dict(row)
        for p in [c for c in r if c in self.rows]:
            c = r.get(p, 0)
            if c == 0:
                continue
            for j, v in self.rows[p].items():
                nv = f.norm(r.get(j, 0) - c * v)
                if nv == 0:
                    r.pop(j, None)
                else:
                    r[j] = nv
        return r

    def add(self, row: dict) -> int | None:
        f = self.field
        r = self.reduce(row)
        r = {j: v for j, v in r.items() if v != 0}
        if not r:
            return None
        piv = min(r)
        inv = f.inv(r[piv])
        r = {j: f.norm(v * inv) for j, v in r.items()}
        for other in self.rows.values():
            c = other.get(piv, 0)
            if c == 0:
                continue
            for j, v in r.items():
                nv = f.norm(other.get(j, 0) - c * v)
                if nv == 0:
                    other.pop(j, None)
                else:
                    other[j] = nv
        self.rows[piv] = r
        return piv

    def pivots(self) -> list:
        return sorted(self.rows)

    def dense(self, ncols: int) -> np.ndarray:
        piv = self.pivots()
        out = self.field.zeros((len(piv), ncols))
        for i, p in enumerate(piv):
            for j, v in self.rows[p].items():
                out[i, j] = v
        return out


def rref(field: Field, mat: np.ndarray) -> tuple[np.ndarray, list]:
    """Reduced row echelon form of ``mat`` (zero rows dropped) and its pivot columns."""
    ech = _Echelon(field)
    for row in _row_dicts(field, np.asarray(mat)):
        if row:
            ech.add(row)
    return ech.dense(np.asarray(mat).shape[1]), ech.pivots()


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace given by the RREF basis of its row space."""

    field: Field
    ambient: Shape
    basis: np.ndarray = dc_field(repr=False)
    pivots: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "ambient", _as_shape(self.ambient))
        self.basis.flags.writeable = False

    @classmethod
    def from_vectors(cls, field: Field, ambient, vectors) -> "Subspace":
        amb = _as_shape(ambient)
        arr = np.asarray(vectors)
        if arr.size == 0:
            arr = field.zeros((0, amb.dim))
        arr = arr.reshape(-1, amb.dim)
        basis, piv = rref(field, arr)
        return cls(field, amb, basis, tuple(piv))

    @classmethod
    def full(cls, field: Field, ambient) -> "Subspace":
        amb = _as_shape(ambient)
        return cls(field, amb, field.eye(amb.dim), tuple(range(amb.dim)))

    @classmethod
    def zero(cls, field: Field, ambient) -> "Subspace":
        amb = _as_shape(ambient)
        return cls(field, amb, field.zeros((0, amb.dim)), ())

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def shape(self) -> Shape:
        """Coordinate shape of the subspace itself."""
        return Shape((self.dim,))

    def inclusion(self) -> LinMap:
        """``sub -> ambient``; domain coordinates are the pivot entries."""
        return LinMap(self.field, self.shape, self.ambient, self.basis.T.copy())

    def contains(self, vec) -> bool:
        v = np.asarray(vec).reshape(-1)
        if self.dim == 0:
            return not np.any(v != 0)
        return bool(np.all(self.field.reduce(self.basis.T @ v[list(self.pivots)]) == v))

    def contains_image(self, f: LinMap) -> bool:
        """Whether every column of ``f`` lies in the subspace."""
        if f.codomain.dim != self.ambient.dim:
            raise ValueError("ambient mismatch")
        if self.dim == 0:
            return f.is_zero()
        back = self.field.reduce(self.basis.T @ f.mat[list(self.pivots), :])
        return bool(np.all(back == f.mat))

    def coords(self, f: LinMap, check: bool = True) -> LinMap:
        """Rewrite a map into the ambient space as a map into subspace coordinates."""
        if check and not self.contains_image(f):
            raise ValueError("map does not land in the subspace")
        return LinMap(self.field, f.domain, Shape((self.dim,)), f.mat[list(self.pivots), :])

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient.dim == other.ambient.dim
            and self.pivots == other.pivots
            and bool(np.all(self.basis == other.basis))
        )

    __hash__ = None

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.from_vectors(
            self.field, self.ambient, np.concatenate([self.basis, other.basis], axis=0)
        )

    def intersect(self, other: "Subspace") -> "Subspace":
        # x = B1^T u = B2^T v  <=>  [B1^T | -B2^T] (u, v) = 0
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient)
        stacked = np.concatenate([self.basis.T, -other.basis.T], axis=1)
        m = LinMap(self.field, Shape((self.dim + other.dim,)), self.ambient, self.field.reduce(stacked))
        ker = kernel(m)
        vecs = [self.field.reduce(self.basis.T @ k[: self.dim]) for k in ker.basis]
        return Subspace.from_vectors(self.field, self.ambient, np.array(vecs) if vecs else [])

    def __repr__(self):
        return f"Subspace(dim {self.dim} in {self.ambient})"


def kernel(f: LinMap) -> Subspace:
    fld = f.field
    n = f.domain.dim
    red, piv = rref(fld, f.mat)
    free = [j for j in range(n) if j not in set(piv)]
    vecs = fld.zeros((len(free), n))
    for k, j in enumerate(free):
        vecs[k, j] = 1
        for r, p in enumerate(piv):
            vecs[k, p] = fld.norm(-red[r, j])
    return Subspace.from_vectors(fld, f.domain, vecs)


def image(f: LinMap) -> Subspace:
    return Subspace.from_vectors(f.field, f.codomain, f.mat.T)


def span(field: Field, ambient, vectors) -> Subspace:
    return Subspace.from_vectors(field, ambient, vectors)


def rank(f: LinMap) -> int:
    return len(rref(f.field, f.mat)[1])


def is_bijective(f: LinMap) -> bool:
    return f.domain.dim == f.codomain.dim and rank(f) == f.domain.dim


def inverse(f: LinMap) -> LinMap:
    """Exact inverse; raises ``ZeroDivisionError`` when ``f`` is singular."""
    n = f.domain.dim
    if f.codomain.dim != n:
        raise ZeroDivisionError("non-square map has no inverse")
    aug = np.concatenate([f.mat, f.field.eye(n)], axis=1)
    red, piv = rref(f.field, aug)
    if piv[:n] != list(range(n)) or len(piv) != n:
        raise ZeroDivisionError("singular map")
    return LinMap(f.field, f.codomain, f.domain, red[:, n:].copy())


@dataclass(frozen=True, eq=False)
class QuotientSpace:
    """``ambient / relators`` with canonical representatives.

    Quotient coordinates are the non-pivot coordinates of the relator RREF; ``sect``
    sends a quotient basis vector to the matching ambient basis vector.
    """

    field: Field
    ambient: Shape
    relators: Subspace
    proj: LinMap
    sect: LinMap

    @property
    def dim(self) -> int:
        return self.proj.codomain.dim

    @property
    def shape(self) -> Shape:
        return self.proj.codomain


def quotient(ambient, relators: Subspace) -> QuotientSpace:
    amb = _as_shape(ambient)
    fld = relators.field
    if relators.ambient.dim != amb.dim:
        raise ValueError("relators live in a different ambient space")
    piv = list(relators.pivots)
    pivset = set(piv)
    reps = [j for j in range(amb.dim) if j not in pivset]
    qshape = Shape((len(reps),))
    pos = {j: k for k, j in enumerate(reps)}
    proj = fld.zeros((len(reps), amb.dim))
    for j in reps:
        proj[pos[j], j] = 1
    for r, p in enumerate(piv):
        row = relators.basis[r]
        for j in reps:
            if row[j] != 0:
                proj[pos[j], p] = fld.norm(-row[j])
    sect = fld.zeros((amb.dim, len(reps)))
    for j in reps:
        sect[j, pos[j]] = 1
    return QuotientSpace(
        fld,
        amb,
        relators,
        LinMap(fld, amb, qshape, proj),
        LinMap(fld, qshape, amb, sect),
    )


# -- constrained solver ---------------------------------------------------------


@dataclass(frozen=True)
class Term:
    """``coeff * left o (I_pre (x) X (x) I_post) o right`` for the unknown map X."""

    left: LinMap | None = None
    right: LinMap | None = None
    pre: int = 1
    post: int = 1
    coeff: object = 1


@dataclass(frozen=True)
class Constraint:
    """``sum(terms) == rhs``; a ``None`` rhs means zero."""

    terms: tuple
    rhs: LinMap | None = None
    name: str = ""

    def __init__(self, terms, rhs=None, name=""):
        object.__setattr__(self, "terms", tuple(terms))
        object.__setattr__(self, "rhs", rhs)
        object.__setattr__(self, "name", name)


def _term_dims(t: Term, n: int, m: int, field: Field):
    left = t.left if t.left is not None else identity(field, t.pre * m * t.post)
    right = t.right if t.right is not None else identity(field, t.pre * n * t.post)
    if left.domain.dim != t.pre * m * t.post:
        raise ValueError(f"left factor has domain {left.domain.dim}, expected {t.pre * m * t.post}")
    if right.codomain.dim != t.pre * n * t.post:
        raise ValueError(f"right factor has codomain {right.codomain.dim}, expected {t.pre * n * t.post}")
    return left, right


def evaluate_term(t: Term, x: LinMap) -> LinMap:
    fld = x.field
    left, right = _term_dims(t, x.domain.dim, x.codomain.dim, fld)
    mid = tensor(identity(fld, t.pre), x, identity(fld, t.post))
    return compose(left, mid.reshaped(right.codomain, left.domain), right).scale(t.coeff)


def _constraint_rows(field: Field, c: Constraint, n: int, m: int):
    """Sparse equations of one constraint: yields (row_dict over vec(X), rhs)."""
    out_rows = out_cols = None
    eqs: dict = {}
    for t in c.terms:
        left, right = _term_dims(t, n, m, field)
        if out_rows is None:
            out_rows, out_cols = left.codomain.dim, right.domain.dim
        elif (out_rows, out_cols) != (left.codomain.dim, right.domain.dim):
            raise ValueError(f"constraint {c.name!r}: terms of different shapes")
        coeff = field.scalar(t.coeff)
        post = t.post
        # group right's nonzeros by (u, v): row index (u, j, v) of I_pre (x) X (x) I_post
        rgroups: dict = {}
        for r, b, val in right.nonzeros():
            u, rem = divmod(r, n * post)
            j, v = divmod(rem, post)
            rgroups.setdefault((u, v), []).append((j, b, val))
        for a, col, lval in left.nonzeros():
            u, rem = divmod(col, m * post)
            i, v = divmod(rem, post)
            for j, b, rval in rgroups.get((u, v), ()):
                row = eqs.setdefault((a, b), {})
                var = i * n + j
                row[var] = field.norm(row.get(var, 0) + coeff * lval * rval)
    if c.rhs is not None:
        if out_rows is None:
            out_rows, out_cols = c.rhs.codomain.dim, c.rhs.domain.dim
        if c.rhs.mat.shape != (out_rows, out_cols):
            raise ValueError(f"constraint {c.name!r}: rhs shape {c.rhs.mat.shape} != {(out_rows, out_cols)}")
        for a, b, val in c.rhs.nonzeros():
            eqs.setdefault((a, b), {})
    for (a, b), row in eqs.items():
        rhs = c.rhs.mat[a, b] if c.rhs is not None else 0
        yield {k: v for k, v in row.items() if v != 0}, rhs


def solution_space(domain, codomain, constraints: Iterable[Constraint], field: Field):
    """Particular solution (free variables zero) and homogeneous basis, or ``None``.

    Returns ``(X, [K_1, ..., K_r])`` where every solution is ``X + sum c_i K_i``.
    """
    dom, cod = _as_shape(domain), _as_shape(codomain)
    n, m = dom.dim, cod.dim
    nvar = n * m
    ech = _Echelon(field)
    for c in constraints:
        for row, rhs in _constraint_rows(field, c, n, m):
            full = dict(row)
            if rhs != 0:
                full[nvar] = field.norm(rhs)
            if full:
                ech.add(full)
    if nvar in ech.rows:
        return None
    sol = field.zeros(nvar)
    for p, row in ech.rows.items():
        sol[p] = row.get(nvar, 0)
    pivset = set(ech.rows)
    kernel_maps = []
    for f in range(nvar):
        if f in pivset:
            continue
        vec = field.zeros(nvar)
        vec[f] = 1
        for p, row in ech.rows.items():
            c = row.get(f, 0)
            if c != 0:
                vec[p] = field.norm(-c)
        kernel_maps.append(LinMap(field, dom, cod, vec.reshape(m, n)))
    return LinMap(field, dom, cod, sol.reshape(m, n)), kernel_maps


def residual(constraint: Constraint, x: LinMap) -> LinMap:
    total = None
    for t in constraint.terms:
        val = evaluate_term(t, x)
        total = val if total is None else LinMap(x.field, total.domain, total.codomain, total.mat + val.mat)
    if constraint.rhs is not None:
        total = LinMap(x.field, total.domain, total.codomain, total.mat - constraint.rhs.mat)
    return total


def solve_constrained_map(domain, codomain, constraints: Sequence[Constraint], field: Field) -> LinMap | None:
    """Find X : domain -> codomain satisfying every linear constraint.

    Returns the particular solution with all free parameters set to zero, or
    ``None`` when the system is inconsistent.  A returned map is re-substituted
    into every constraint and must leave a zero residual.
    """
    constraints = list(constraints)
    found = solution_space(domain, codomain, constraints, field)
    if found is None:
        return None
    x = found[0]
    for c in constraints:
        if not residual(c, x).is_zero():
            raise AssertionError(f"solver returned a map violating constraint {c.name!r}")
    return x
