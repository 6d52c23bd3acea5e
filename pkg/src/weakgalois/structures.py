"""Finite-dimensional algebras, coalgebras, (co)modules and their axiom checkers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Mapping, Sequence

import numpy as np

from .exactlin import (
    Field,
    LinMap,
    Shape,
    identity,
    swap,
    tensor,
)
from .report import Report, compare, truth

if TYPE_CHECKING:
    from .weak_hopf import WeakBialgebra


def _expect(f: LinMap, dom: tuple, cod: tuple, what: str):
    if f.domain.dim != Shape(dom).dim or f.codomain.dim != Shape(cod).dim:
        raise ValueError(
            f"{what}: expected {Shape(cod)} <- {Shape(dom)}, got "
            f"{f.codomain} <- {f.domain}"
        )
    return f.reshaped(Shape(dom), Shape(cod))


@dataclass(frozen=True, eq=False)
class FinAlgebra:
    field: Field
    dim: int
    mul: LinMap
    unit: LinMap

    def __post_init__(self):
        n = self.dim
        object.__setattr__(self, "mul", _expect(self.mul, (n, n), (n,), "multiplication"))
        object.__setattr__(self, "unit", _expect(self.unit, (), (n,), "unit"))

    @classmethod
    def from_table(cls, field: Field, dim: int, table: Mapping, unit: Sequence) -> "FinAlgebra":
        """``table[(i, j)]`` is the coordinate vector of ``e_i e_j`` (missing pairs are zero)."""
        mat = field.zeros((dim, dim * dim))
        for (i, j), vec in table.items():
            for k, x in enumerate(vec):
                mat[k, i * dim + j] = field.scalar(x)
        u = field.zeros((dim, 1))
        for k, x in enumerate(unit):
            u[k, 0] = field.scalar(x)
        return cls(field, dim, LinMap(field, (dim, dim), (dim,), mat), LinMap(field, (), (dim,), u))

    def id(self) -> LinMap:
        return identity(self.field, self.dim)

    def product(self, x, y):
        """Product of two coordinate vectors."""
        return self.field.reduce(self.mul.mat @ np.kron(np.asarray(x), np.asarray(y)))

    def validate(self) -> "FinAlgebra":
        _raise_on_fail(check_algebra(self))
        return self


@dataclass(frozen=True, eq=False)
class FinCoalgebra:
    field: Field
    dim: int
    comul: LinMap
    counit: LinMap

    def __post_init__(self):
        n = self.dim
        object.__setattr__(self, "comul", _expect(self.comul, (n,), (n, n), "comultiplication"))
        object.__setattr__(self, "counit", _expect(self.counit, (n,), (), "counit"))

    @classmethod
    def from_triples(cls, field: Field, dim: int, triples: Sequence, counit: Sequence) -> "FinCoalgebra":
        """``triples[k]`` lists ``(i, j, coeff)`` with ``Delta(e_k) = sum coeff e_i (x) e_j``."""
        mat = field.zeros((dim * dim, dim))
        for k, terms in enumerate(triples):
            for i, j, x in terms:
                mat[i * dim + j, k] = field.norm(mat[i * dim + j, k] + field.scalar(x))
        eps = field.zeros((1, dim))
        for k, x in enumerate(counit):
            eps[0, k] = field.scalar(x)
        return cls(field, dim, LinMap(field, (dim,), (dim, dim), mat), LinMap(field, (dim,), (), eps))

    def id(self) -> LinMap:
        return identity(self.field, self.dim)

    def validate(self) -> "FinCoalgebra":
        _raise_on_fail(check_coalgebra(self))
        return self


@dataclass(frozen=True, eq=False)
class RightComodule:
    over: FinCoalgebra
    coaction: LinMap

    def __post_init__(self):
        m = self.coaction.domain.dim
        object.__setattr__(
            self, "coaction", _expect(self.coaction, (m,), (m, self.over.dim), "right coaction")
        )

    @property
    def dim(self) -> int:
        return self.coaction.domain.dim


@dataclass(frozen=True, eq=False)
class LeftComodule:
    over: FinCoalgebra
    coaction: LinMap

    def __post_init__(self):
        m = self.coaction.domain.dim
        object.__setattr__(
            self, "coaction", _expect(self.coaction, (m,), (self.over.dim, m), "left coaction")
        )

    @property
    def dim(self) -> int:
        return self.coaction.domain.dim


@dataclass(frozen=True, eq=False)
class RightModule:
    over: FinAlgebra
    action: LinMap

    def __post_init__(self):
        m = self.action.codomain.dim
        object.__setattr__(
            self, "action", _expect(self.action, (m, self.over.dim), (m,), "right action")
        )

    @property
    def dim(self) -> int:
        return self.action.codomain.dim


def _raise_on_fail(rep: Report):
    bad = rep.failed()
    if bad:
        raise ValueError(f"{rep.title}: law {bad[0].name} fails at {bad[0].witness}")


# -- checkers ---------------------------------------------------------------------


def check_algebra(a: FinAlgebra) -> Report:
    k, n, mu, u = a.field, a.dim, a.mul, a.unit
    idn = identity(k, n)
    rep = Report("algebra", dims={"A": n})
    rep.add(compare("assoc", mu @ tensor(mu, idn), mu @ tensor(idn, mu)))
    rep.add(compare("unit.left", mu @ tensor(u, idn), idn))
    rep.add(compare("unit.right", mu @ tensor(idn, u), idn))
    return rep


def check_coalgebra(c: FinCoalgebra) -> Report:
    k, n, d, e = c.field, c.dim, c.comul, c.counit
    idn = identity(k, n)
    rep = Report("coalgebra", dims={"C": n})
    rep.add(compare("coassoc", tensor(d, idn) @ d, tensor(idn, d) @ d))
    rep.add(compare("counit.left", tensor(e, idn) @ d, idn))
    rep.add(compare("counit.right", tensor(idn, e) @ d, idn))
    return rep


def check_right_comodule(m: RightComodule) -> Report:
    c = m.over
    k = c.field
    rho, idm, idc = m.coaction, identity(k, m.dim), c.id()
    rep = Report("right comodule", dims={"M": m.dim, "C": c.dim})
    rep.add(compare("coassoc", tensor(rho, idc) @ rho, tensor(idm, c.comul) @ rho))
    rep.add(compare("counit", tensor(idm, c.counit) @ rho, idm))
    return rep


def check_left_comodule(m: LeftComodule) -> Report:
    c = m.over
    k = c.field
    lam, idm, idc = m.coaction, identity(k, m.dim), c.id()
    rep = Report("left comodule", dims={"M": m.dim, "C": c.dim})
    rep.add(compare("coassoc", tensor(idc, lam) @ lam, tensor(c.comul, idm) @ lam))
    rep.add(compare("counit", tensor(c.counit, idm) @ lam, idm))
    return rep


def check_right_module(m: RightModule) -> Report:
    a = m.over
    k = a.field
    act, idm, ida = m.action, identity(k, m.dim), a.id()
    rep = Report("right module", dims={"M": m.dim, "A": a.dim})
    rep.add(compare("assoc", act @ tensor(act, ida), act @ tensor(idm, a.mul)))
    rep.add(compare("unit", act @ tensor(idm, a.unit), idm))
    return rep


# -- duals --------------------------------------------------------------------------


def dual_algebra(c: FinCoalgebra) -> FinAlgebra:
    """Convolution algebra C* in the dual basis: (f*g)(x) = sum f(x_(1)) g(x_(2))."""
    n = c.dim
    mul = LinMap(c.field, (n, n), (n,), c.comul.mat.T.copy())
    unit = LinMap(c.field, (), (n,), c.counit.mat.T.copy())
    return FinAlgebra(c.field, n, mul, unit)


def left_comodule_to_right_dual_module(n: LeftComodule) -> RightModule:
    """Right C*-module with ``x . f = sum f(x_(-1)) x_(0)``."""
    c = n.over
    k, m, d = c.field, n.dim, c.dim
    lam = n.coaction.mat
    act = k.zeros((m, m * d))
    for x in range(m):
        for i in range(d):
            # column (x, i) of the action is lambda(e_x) restricted to the e_i leg
            act[:, x * d + i] = lam[i * m : (i + 1) * m, x]
    return RightModule(dual_algebra(c), LinMap(k, (m, d), (m,), act))


# -- compatibility with a weak bialgebra --------------------------------------------


_COMAL_EQUIV = ("comal.pl", "one.1", "one.2", "comal.pr", "comal.pr.one", "comal.pl.one")


def check_comodule_algebra(a: FinAlgebra, rho: RightComodule, h: "WeakBialgebra") -> Report:
    """Multiplicativity of the coaction and the five equivalent unit conditions.

    Under multiplicativity (and the comodule laws) the six unit-type conditions are
    all equivalent, so the report also records whether they agree.
    """
    from .weak_hopf import pi_maps

    k, m, n = a.field, a.dim, h.dim
    if rho.over.dim != n or rho.dim != m:
        raise ValueError("coaction does not match algebra and weak bialgebra")
    pis = pi_maps(h, check=False)
    r = rho.coaction
    ida, idh = a.id(), identity(k, n)
    mu_a, mu_h = a.mul, h.alg.mul
    r1 = r @ a.unit
    d1 = h.coalg.comul @ h.alg.unit
    t_ha = swap(k, n, m)

    rep = Report("comodule algebra", dims={"A": m, "H": n})
    rep.extend(check_right_comodule(rho), "comodule.")
    rep.add(
        compare(
            "comal.m",
            r @ mu_a,
            tensor(mu_a, mu_h) @ tensor(ida, t_ha, idh) @ tensor(r, r),
        )
    )
    rep.add(
        compare(
            "comal.pl",
            tensor(ida, pis.piL) @ r,
            tensor(mu_a, idh) @ tensor(ida, t_ha) @ tensor(r1, ida),
        )
    )
    rho2 = tensor(r, idh) @ r1
    rep.add(compare("one.1", rho2, tensor(ida, mu_h, idh) @ tensor(r1, d1)))
    rep.add(
        compare(
            "one.2",
            rho2,
            tensor(ida, mu_h, idh) @ tensor(ida, swap(k, n, n), idh) @ tensor(r1, d1),
        )
    )
    rep.add(
        compare(
            "comal.pr",
            tensor(ida, pis.piBarR) @ r,
            tensor(mu_a, idh) @ tensor(ida, r1),
        )
    )
    rep.add(compare("comal.pr.one", tensor(ida, pis.piBarR) @ r1, r1))
    rep.add(compare("comal.pl.one", tensor(ida, pis.piL) @ r1, r1))

    base_ok = rep["comal.m"] and rep["comodule.coassoc"] and rep["comodule.counit"]
    verdicts = {rep[name] for name in _COMAL_EQUIV}
    consistent = (not base_ok) or len(verdicts) == 1
    rep.add(
        truth(
            "equivalence",
            consistent,
            {"at": None, "verdicts": {name: rep[name] for name in _COMAL_EQUIV}},
        )
    )
    return rep


def check_module_coalgebra(c: FinCoalgebra, act: RightModule, h: "WeakBialgebra") -> Report:
    k, m, n = c.field, c.dim, h.dim
    if act.over.dim != n or act.dim != m:
        raise ValueError("action does not match coalgebra and weak bialgebra")
    a = act.action
    idc, idh = c.id(), identity(k, n)
    eps_mu = h.coalg.counit @ h.alg.mul
    eps_act = c.counit @ a

    rep = Report("module coalgebra", dims={"C": m, "H": n})
    rep.extend(check_right_module(act), "module.")
    rep.add(
        compare(
            "modco.com",
            c.comul @ a,
            tensor(a, a) @ tensor(idc, swap(k, m, n), idh) @ tensor(c.comul, h.coalg.comul),
        )
    )
    rep.add(
        compare(
            "modco.counit",
            eps_act @ tensor(a, idh),
            tensor(eps_act, eps_mu)
            @ tensor(idc, swap(k, n, n), idh)
            @ tensor(idc, h.coalg.comul, idh),
        )
    )
    return rep

