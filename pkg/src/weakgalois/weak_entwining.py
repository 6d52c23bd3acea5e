"""Weak entwining structures, their projections and the associated corings.

A right-right structure is a map ``psiR : C (x) A -> A (x) C``; a left-left one is
``psiL : A (x) C -> C (x) A``.  The coring of a right-right structure lives on the
image of ``p_R`` inside ``A (x) C``, the left-left coring on the image of ``p_L``
inside ``C (x) A``.  Coring maps are stored in coordinates of the carrier
subspace, and the coproduct is valued in coordinates of the balanced tensor
square (a quotient space), so every coring law is a plain matrix equality.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exactlin import (
    LinMap,
    QuotientSpace,
    Shape,
    Subspace,
    identity,
    image,
    is_bijective,
    quotient,
    tensor,
)
from .report import Report, TheoremViolation, compare, truth
from .structures import FinAlgebra, FinCoalgebra, LeftComodule, RightComodule, check_left_comodule, check_right_comodule


@dataclass(frozen=True, eq=False)
class WeakEntwiningRR:
    a: FinAlgebra
    c: FinCoalgebra
    psi: LinMap

    def __post_init__(self):
        m, n = self.a.dim, self.c.dim
        if self.psi.mat.shape != (m * n, n * m):
            raise ValueError(f"psiR must map C(x)A -> A(x)C, got {self.psi.mat.shape}")
        object.__setattr__(self, "psi", self.psi.reshaped((n, m), (m, n)))

    @property
    def field(self):
        return self.a.field

    def validated(self) -> "WeakEntwiningRR":
        rep = check_rr(self)
        if not rep.ok:
            bad = rep.failed()[0]
            raise TheoremViolation(f"weak entwining axiom {bad.name}", bad.witness)
        return self


@dataclass(frozen=True, eq=False)
class WeakEntwiningLL:
    a: FinAlgebra
    c: FinCoalgebra
    psi: LinMap

    def __post_init__(self):
        m, n = self.a.dim, self.c.dim
        if self.psi.mat.shape != (n * m, m * n):
            raise ValueError(f"psiL must map A(x)C -> C(x)A, got {self.psi.mat.shape}")
        object.__setattr__(self, "psi", self.psi.reshaped((m, n), (n, m)))

    @property
    def field(self):
        return self.a.field

    def validated(self) -> "WeakEntwiningLL":
        rep = check_ll(self)
        if not rep.ok:
            bad = rep.failed()[0]
            raise TheoremViolation(f"weak entwining axiom {bad.name}", bad.witness)
        return self


@dataclass(frozen=True, eq=False)
class InvertibleWeakEntwining:
    rr: WeakEntwiningRR
    ll: WeakEntwiningLL

    @property
    def a(self) -> FinAlgebra:
        return self.rr.a

    @property
    def c(self) -> FinCoalgebra:
        return self.rr.c

    @property
    def field(self):
        return self.rr.a.field


# -- axioms -------------------------------------------------------------------------


def _unit_leg_rr(we: WeakEntwiningRR) -> LinMap:
    """``c -> psiR(c (x) 1) = sum 1_alpha (x) c^alpha``."""
    return we.psi @ tensor(we.c.id(), we.a.unit)


def _unit_leg_ll(we: WeakEntwiningLL) -> LinMap:
    """``c -> psiL(1 (x) c) = sum c_E (x) 1^E``."""
    return we.psi @ tensor(we.a.unit, we.c.id())


def check_rr(we: WeakEntwiningRR) -> Report:
    a, c, psi = we.a, we.c, we.psi
    m, n = a.dim, c.dim
    ia, ic = a.id(), c.id()
    mu, delta, eps = a.mul, c.comul, c.counit
    rep = Report("right-right weak entwining", dims={"A": m, "C": n})
    rep.add(compare("re1", psi @ tensor(ic, mu), tensor(mu, ic) @ tensor(ia, psi) @ tensor(psi, ia)))
    e_one = tensor(ia, eps) @ _unit_leg_rr(we)
    rep.add(compare("re2", tensor(ia, eps) @ psi, mu @ tensor(e_one, ia)))
    rep.add(compare("re3", tensor(ia, delta) @ psi, tensor(psi, ic) @ tensor(ic, psi) @ tensor(delta, ia)))
    rep.add(
        compare(
            "re4",
            _unit_leg_rr(we),
            tensor(ia, eps, ic) @ tensor(_unit_leg_rr(we), ic) @ delta,
        )
    )
    return rep


def check_ll(we: WeakEntwiningLL) -> Report:
    a, c, psi = we.a, we.c, we.psi
    m, n = a.dim, c.dim
    ia, ic = a.id(), c.id()
    mu, delta, eps = a.mul, c.comul, c.counit
    rep = Report("left-left weak entwining", dims={"A": m, "C": n})
    rep.add(compare("le1", psi @ tensor(mu, ic), tensor(ic, mu) @ tensor(psi, ia) @ tensor(ia, psi)))
    e_one = tensor(eps, ia) @ _unit_leg_ll(we)
    rep.add(compare("le2", tensor(eps, ia) @ psi, mu @ tensor(ia, e_one)))
    rep.add(compare("le3", tensor(delta, ia) @ psi, tensor(ic, psi) @ tensor(psi, ic) @ tensor(ia, delta)))
    rep.add(
        compare(
            "le4",
            _unit_leg_ll(we),
            tensor(ic, eps, ia) @ tensor(ic, _unit_leg_ll(we)) @ delta,
        )
    )
    return rep


def strict_checks(we: WeakEntwiningRR) -> list:
    a, c = we.a, we.c
    ia = a.id()
    return [
        compare("strict.counit", tensor(ia, c.counit) @ we.psi, tensor(c.counit, ia)),
        compare("strict.unit", _unit_leg_rr(we), tensor(a.unit, c.id())),
    ]


def is_strict(we: WeakEntwiningRR) -> bool:
    """Whether the counit and unit laws hold in their classical (non-weak) form."""
    return all(ch.ok for ch in strict_checks(we))


def projection_pR(we: WeakEntwiningRR) -> LinMap:
    p = _proj_rr(we)
    if not p @ p == p:
        raise TheoremViolation("p_R is not idempotent")
    return p


def projection_pL(we: WeakEntwiningLL) -> LinMap:
    p = _proj_ll(we)
    if not p @ p == p:
        raise TheoremViolation("p_L is not idempotent")
    return p


# -- entwined modules -----------------------------------------------------------------


def check_weak_entwined_module_rr(we: WeakEntwiningRR, m: RightComodule, action: LinMap) -> Report:
    """``rho(m a) = sum m_[0] a_alpha (x) m_[1]^alpha`` for a right action ``M (x) A -> M``."""
    k, d = we.field, m.dim
    act = action.reshaped((d, we.a.dim), (d,))
    rho = m.coaction
    im = identity(k, d)
    rep = Report("weak entwined module (right-right)", dims={"M": d})
    rep.extend(check_right_comodule(m), "comodule.")
    rep.add(compare("entwined", rho @ act, tensor(act, we.c.id()) @ tensor(im, we.psi) @ tensor(rho, we.a.id())))
    return rep


def check_weak_entwined_module_ll(we: WeakEntwiningLL, m: LeftComodule, action: LinMap) -> Report:
    """``lambda(a m) = sum m_[-1]E (x) a^E m_[0]`` for a left action ``A (x) M -> M``."""
    k, d = we.field, m.dim
    act = action.reshaped((we.a.dim, d), (d,))
    lam = m.coaction
    rep = Report("weak entwined module (left-left)", dims={"M": d})
    rep.extend(check_left_comodule(m), "comodule.")
    rep.add(compare("entwined", lam @ act, tensor(we.c.id(), act) @ tensor(we.psi, identity(k, d)) @ tensor(we.a.id(), lam)))
    return rep


# -- corings ----------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ACoring:
    """An A-coring on a subspace X of ``A (x) C`` (side rr) or ``C (x) A`` (side ll).

    ``left : A (x) X -> X``, ``right : X (x) A -> X``, ``coproduct : X -> Q2`` where
    ``Q2 = X (x)_A X`` is :attr:`balanced`, ``counit : X -> A``.  All maps use the
    carrier's pivot coordinates.
    """

    base: FinAlgebra
    side: str
    carrier: Subspace
    left: LinMap
    right: LinMap
    coproduct: LinMap
    counit: LinMap
    balanced: QuotientSpace
    grouplike: LinMap | None = None

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def field(self):
        return self.base.field

    def inclusion(self) -> LinMap:
        return self.carrier.inclusion()

    def coords(self, f: LinMap) -> LinMap:
        return self.carrier.coords(f)

    def id(self) -> LinMap:
        return identity(self.field, self.dim)

    def lift2(self) -> LinMap:
        """Representatives ``Q2 -> X (x) X``."""
        return self.balanced.sect.reshaped(None, (self.dim, self.dim))

    def proj2(self) -> LinMap:
        return self.balanced.proj.reshaped((self.dim, self.dim), None)


def balanced_tensor(base: FinAlgebra, dim: int, left: LinMap, right: LinMap) -> QuotientSpace:
    """``X (x)_A X``: the quotient of ``X (x) X`` by ``x a (x) y - x (x) a y``."""
    k = base.field
    ix = identity(k, dim)
    rel = tensor(right, ix) - tensor(ix, left)
    return quotient(Shape((dim, dim)), image(rel))


def _restrict(carrier: Subspace, f: LinMap, name: str) -> LinMap:
    if not carrier.contains_image(f):
        raise TheoremViolation(f"{name} leaves the carrier")
    return carrier.coords(f, check=False)


def _make_coring(base, side, carrier, left_amb, right_amb, lift_amb, counit_amb, g_amb=None) -> ACoring:
    """Restrict ambient structure maps to the carrier and assemble the coring."""
    incl = carrier.inclusion()
    ia = base.id()
    left = _restrict(carrier, left_amb @ tensor(ia, incl), "left action")
    right = _restrict(carrier, right_amb @ tensor(incl, ia), "right action")
    d = carrier.dim
    bal = balanced_tensor(base, d, left, right)
    # lift_amb : ambient -> ambient (x) ambient, both legs already inside the carrier
    legs = _coords2(carrier, lift_amb @ incl)
    coproduct = bal.proj.reshaped((d, d), None) @ legs
    counit = counit_amb @ incl
    g = None
    if g_amb is not None:
        g = _restrict(carrier, g_amb, "grouplike")
    return ACoring(base, side, carrier, left, right, coproduct, counit.reshaped(None, (base.dim,)), bal, g)


def _coords2(carrier: Subspace, f: LinMap) -> LinMap:
    """Rewrite ``f : V -> amb (x) amb`` with both legs in the carrier into ``V -> X (x) X``."""
    amb = carrier.ambient.dim
    d = carrier.dim
    piv = list(carrier.pivots)
    mat = f.mat.reshape(amb, amb, -1)
    sub = mat[np.ix_(piv, piv, range(mat.shape[2]))].reshape(d * d, -1)
    out = LinMap(f.field, f.domain, Shape((d, d)), sub)
    incl = carrier.inclusion()
    if not tensor(incl, incl) @ out == f.reshaped(None, (amb * amb,)):
        raise TheoremViolation("coproduct legs leave the carrier")
    return out


def check_coring(x: ACoring) -> Report:
    k, d, m = x.field, x.dim, x.base.dim
    ix, ia = x.id(), x.base.id()
    mu = x.base.mul
    L, R, D, E = x.left, x.right, x.coproduct, x.counit
    proj2, lift2 = x.proj2(), x.lift2()
    rep = Report(f"A-coring ({x.side})", dims={"A": m, "carrier": d, "balanced": x.balanced.dim})

    rep.add(compare("bimodule.left.assoc", L @ tensor(mu, ix), L @ tensor(ia, L)))
    rep.add(compare("bimodule.left.unit", L @ tensor(x.base.unit, ix), ix))
    rep.add(compare("bimodule.right.assoc", R @ tensor(ix, mu), R @ tensor(R, ia)))
    rep.add(compare("bimodule.right.unit", R @ tensor(ix, x.base.unit), ix))
    rep.add(compare("bimodule.compat", L @ tensor(ia, R), R @ tensor(L, ia)))

    # induced actions on the balanced square
    l2 = proj2 @ tensor(L, ix) @ tensor(ia, lift2)
    r2 = proj2 @ tensor(ix, R) @ tensor(lift2, ia)
    rep.add(compare("coproduct.left-linear", D @ L, l2 @ tensor(ia, D)))
    rep.add(compare("coproduct.right-linear", D @ R, r2 @ tensor(D, ia)))
    rep.add(compare("counit.left-linear", E @ L, mu @ tensor(ia, E)))
    rep.add(compare("counit.right-linear", E @ R, mu @ tensor(E, ia)))

    # X (x)_A X (x)_A X realised as Q2 (x)_A X
    q2 = x.balanced.dim
    iq2 = identity(k, q2)
    rel3 = tensor(r2, ix) - tensor(iq2, L)
    q3 = quotient(Shape((q2, d)), image(rel3))
    to_q3 = q3.proj @ tensor(proj2, ix)  # X (x) X (x) X -> Q3
    lhs = q3.proj @ tensor(D, ix) @ lift2 @ D
    rhs = to_q3 @ tensor(ix, lift2) @ tensor(ix, D) @ lift2 @ D
    rep.add(compare("coassoc", lhs, rhs))
    rep.dims["balanced3"] = q3.dim
    rep.add(compare("counit.left", L @ tensor(E, ix) @ lift2 @ D, ix))
    rep.add(compare("counit.right", R @ tensor(ix, E) @ lift2 @ D, ix))

    if x.grouplike is not None:
        g = x.grouplike
        rep.add(compare("grouplike.coproduct", D @ g, proj2 @ tensor(g, g)))
        rep.add(compare("grouplike.counit", E @ g, x.base.unit))
    return rep


def _verified(x: ACoring) -> ACoring:
    rep = check_coring(x)
    if not rep.ok:
        bad = rep.failed()[0]
        raise TheoremViolation(f"coring law {bad.name}", bad.witness)
    return x


def build_coring_rr(we: WeakEntwiningRR, grouplike: LinMap | None = None) -> ACoring:
    a, c = we.a, we.c
    m, n = a.dim, c.dim
    ia, ic = a.id(), c.id()
    p = projection_pR(we)
    carrier = image(p)
    left_amb = tensor(a.mul, ic)
    right_amb = tensor(a.mul, ic) @ tensor(ia, we.psi)
    # a (x) c -> p_R(a (x) c_(1)) (x) p_R(1 (x) c_(2))
    lift_amb = tensor(p, p) @ tensor(ia, ic, a.unit, ic) @ tensor(ia, c.comul)
    counit_amb = tensor(ia, c.counit)
    x = _make_coring(a, "rr", carrier, left_amb, right_amb, lift_amb.reshaped(None, (m * n, m * n)), counit_amb, grouplike)
    return _verified(x)


def build_coring_ll(we: WeakEntwiningLL, grouplike: LinMap | None = None) -> ACoring:
    a, c = we.a, we.c
    m, n = a.dim, c.dim
    ia, ic = a.id(), c.id()
    p = projection_pL(we)
    carrier = image(p)
    left_amb = tensor(ic, a.mul) @ tensor(we.psi, ia)
    right_amb = tensor(ic, a.mul)
    # c (x) a -> p_L(c_(1) (x) 1) (x) p_L(c_(2) (x) a)
    lift_amb = tensor(p, p) @ tensor(ic, a.unit, ic, ia) @ tensor(c.comul, ia)
    counit_amb = tensor(c.counit, ia)
    x = _make_coring(a, "ll", carrier, left_amb, right_amb, lift_amb.reshaped(None, (n * m, n * m)), counit_amb, grouplike)
    return _verified(x)


# -- invertible structures ------------------------------------------------------------


def check_invertible(rr: WeakEntwiningRR, ll: WeakEntwiningLL) -> Report:
    a, c = rr.a, rr.c
    rep = Report("invertible weak entwining", dims={"A": a.dim, "C": c.dim})
    rep.extend(check_rr(rr), "a.")
    rep.extend(check_ll(ll), "a.")
    pr, pl = _proj_rr(rr), _proj_ll(ll)
    rep.add(compare("b.psiR-psiL", rr.psi @ ll.psi, pr))
    rep.add(compare("b.psiL-psiR", ll.psi @ rr.psi, pl))
    lhs = tensor(c.counit, a.id()) @ _unit_leg_ll(ll)
    rhs = tensor(a.id(), c.counit) @ _unit_leg_rr(rr)
    rep.add(compare("c.counit", lhs, rhs))
    rep.add(compare("psiR-pL", rr.psi @ pl, rr.psi))
    rep.add(compare("psiL-pR", ll.psi @ pr, ll.psi))
    return rep


def _proj_rr(we: WeakEntwiningRR) -> LinMap:
    a, c = we.a, we.c
    p = tensor(a.mul, c.id()) @ tensor(a.id(), we.psi) @ tensor(a.id(), c.id(), a.unit)
    return p.reshaped((a.dim, c.dim), (a.dim, c.dim))


def _proj_ll(we: WeakEntwiningLL) -> LinMap:
    a, c = we.a, we.c
    p = tensor(c.id(), a.mul) @ tensor(we.psi, a.id()) @ tensor(a.unit, c.id(), a.id())
    return p.reshaped((c.dim, a.dim), (c.dim, a.dim))


def make_invertible(rr: WeakEntwiningRR, ll: WeakEntwiningLL) -> InvertibleWeakEntwining:
    rep = check_invertible(rr, ll)
    if not rep.ok:
        bad = rep.failed()[0]
        raise TheoremViolation(f"invertibility condition {bad.name}", bad.witness)
    return InvertibleWeakEntwining(rr, ll)


def lemma_bij_property(we: WeakEntwiningRR) -> Report:
    """A bijective weak entwining map must be a strict entwining map."""
    bij = is_bijective(we.psi)
    strict = is_strict(we)
    if not bij:
        verdict = "vacuous"
    elif strict:
        verdict = "confirmed"
    else:
        verdict = "VIOLATED"
    rep = Report("bijective implies strict", data={"verdict": verdict, "bijective": bij, "strict": strict})
    rep.add(truth("bijective-implies-strict", verdict != "VIOLATED", {"at": None, "verdict": verdict}))
    return rep


def coring_iso_check(inv: InvertibleWeakEntwining) -> Report:
    """psiL restricted to Im p_R and psiR restricted to Im p_L are inverse coring maps."""
    cr = build_coring_rr(inv.rr)
    cl = build_coring_ll(inv.ll)
    rep = Report("coring isomorphism", dims={"Im pR": cr.dim, "Im pL": cl.dim})
    ok_into = cl.carrier.contains_image(inv.ll.psi @ cr.inclusion())
    ok_back = cr.carrier.contains_image(inv.rr.psi @ cl.inclusion())
    rep.add(truth("psiL maps Im pR into Im pL", ok_into))
    rep.add(truth("psiR maps Im pL into Im pR", ok_back))
    if not (ok_into and ok_back):
        return rep
    phi = cl.coords(inv.ll.psi @ cr.inclusion())
    chi = cr.coords(inv.rr.psi @ cl.inclusion())
    ia = inv.a.id()
    rep.add(compare("inverse.R", chi @ phi, cr.id()))
    rep.add(compare("inverse.L", phi @ chi, cl.id()))
    for name, f, src, dst in (("psiL", phi, cr, cl), ("psiR", chi, cl, cr)):
        rep.add(compare(f"{name}.left-linear", f @ src.left, dst.left @ tensor(ia, f)))
        rep.add(compare(f"{name}.right-linear", f @ src.right, dst.right @ tensor(f, ia)))
        rep.add(compare(f"{name}.counit", dst.counit @ f, src.counit))
        ff = dst.proj2() @ tensor(f, f) @ src.lift2()
        rep.add(compare(f"{name}.coproduct", dst.coproduct @ f, ff @ src.coproduct))
    return rep


def left_coaction_from_right(inv: InvertibleWeakEntwining, rho: RightComodule) -> LeftComodule:
    """The left C-coaction ``a -> psiL(sum a 1_(0) (x) 1_(1))`` on A, verified."""
    a, c = inv.a, inv.c
    g = rho.coaction @ a.unit
    lam = inv.ll.psi @ tensor(a.mul, c.id()) @ tensor(a.id(), g)
    lam = lam.reshaped((a.dim,), (c.dim, a.dim))
    left = LeftComodule(c, lam)
    rep = check_weak_entwined_module_ll(inv.ll, left, a.mul)
    if not rep.ok:
        bad = rep.failed()[0]
        raise TheoremViolation(f"induced left coaction: {bad.name}", bad.witness)
    return left
