"""Weak bialgebras, weak Hopf algebras and the weak entwinings they induce."""

from __future__ import annotations

from dataclasses import dataclass

from .exactlin import LinMap, identity, inverse, permute_factors, swap, tensor
from .report import Report, TheoremViolation, compare
from .structures import (
    FinAlgebra,
    FinCoalgebra,
    RightComodule,
    RightModule,
    check_algebra,
    check_coalgebra,
    check_comodule_algebra,
)
from .weak_entwining import (
    ACoring,
    InvertibleWeakEntwining,
    WeakEntwiningLL,
    WeakEntwiningRR,
    build_coring_rr,
    check_invertible,
    check_ll,
    check_rr,
)


class SingularAntipode(ValueError):
    """The antipode is not invertible."""


@dataclass(frozen=True, eq=False)
class WeakBialgebra:
    alg: FinAlgebra
    coalg: FinCoalgebra

    def __post_init__(self):
        if self.alg.dim != self.coalg.dim or self.alg.field != self.coalg.field:
            raise ValueError("algebra and coalgebra must share carrier and field")

    @property
    def dim(self) -> int:
        return self.alg.dim

    @property
    def field(self):
        return self.alg.field

    def id(self) -> LinMap:
        return identity(self.field, self.dim)

    def delta_one(self) -> LinMap:
        return self.coalg.comul @ self.alg.unit

    def eps_mu(self) -> LinMap:
        return self.coalg.counit @ self.alg.mul

    def is_weak(self) -> bool:
        """True when Delta(1) differs from 1 (x) 1."""
        return not self.delta_one() == tensor(self.alg.unit, self.alg.unit)

    def regular_comodule(self) -> RightComodule:
        return RightComodule(self.coalg, self.coalg.comul)

    def regular_module(self) -> RightModule:
        return RightModule(self.alg, self.alg.mul)


@dataclass(frozen=True, eq=False)
class WeakHopf:
    wb: WeakBialgebra
    antipode: LinMap
    antipode_inv: LinMap | None = None

    def __post_init__(self):
        n = self.wb.dim
        object.__setattr__(self, "antipode", self.antipode.reshaped((n,), (n,)))
        if self.antipode_inv is None:
            try:
                object.__setattr__(self, "antipode_inv", inverse(self.antipode))
            except ZeroDivisionError:
                pass

    @property
    def alg(self) -> FinAlgebra:
        return self.wb.alg

    @property
    def coalg(self) -> FinCoalgebra:
        return self.wb.coalg

    @property
    def dim(self) -> int:
        return self.wb.dim

    @property
    def field(self):
        return self.wb.field

    def id(self) -> LinMap:
        return self.wb.id()

    def delta_one(self) -> LinMap:
        return self.wb.delta_one()

    def eps_mu(self) -> LinMap:
        return self.wb.eps_mu()

    def is_weak(self) -> bool:
        return self.wb.is_weak()

    def regular_comodule(self) -> RightComodule:
        return self.wb.regular_comodule()

    def regular_module(self) -> RightModule:
        return self.wb.regular_module()


def _wb(h) -> WeakBialgebra:
    return h.wb if isinstance(h, WeakHopf) else h


@dataclass(frozen=True, eq=False)
class PiMaps:
    piL: LinMap
    piR: LinMap
    piBarL: LinMap
    piBarR: LinMap

    def items(self):
        return (("piL", self.piL), ("piR", self.piR), ("piBarL", self.piBarL), ("piBarR", self.piBarR))


def pi_maps(h, check: bool = True) -> PiMaps:
    """The four projections built from the counit and Delta(1)."""
    wb = _wb(h)
    k, n = wb.field, wb.dim
    ih = wb.id()
    d1, em = wb.delta_one(), wb.eps_mu()
    t = swap(k, n, n)
    pis = PiMaps(
        piL=tensor(em, ih) @ tensor(ih, t) @ tensor(d1, ih),
        piR=tensor(ih, em) @ tensor(t, ih) @ tensor(ih, d1),
        piBarL=tensor(ih, em) @ tensor(d1, ih),
        piBarR=tensor(em, ih) @ tensor(ih, d1),
    )
    if check:
        for name, p in pis.items():
            if not p @ p == p:
                raise TheoremViolation(f"{name} is not idempotent")
    return pis


def check_weak_bialgebra(h) -> Report:
    wb = _wb(h)
    k, n = wb.field, wb.dim
    ih = wb.id()
    mu, delta = wb.alg.mul, wb.coalg.comul
    d1, em = wb.delta_one(), wb.eps_mu()
    t = swap(k, n, n)
    rep = Report("weak bialgebra", dims={"H": n}, data={"weak": wb.is_weak()})
    rep.extend(check_algebra(wb.alg), "algebra.")
    rep.extend(check_coalgebra(wb.coalg), "coalgebra.")
    rep.add(compare("multiplicative", delta @ mu, tensor(mu, mu) @ tensor(ih, t, ih) @ tensor(delta, delta)))
    d2 = tensor(delta, ih) @ d1
    mid = tensor(ih, mu, ih)
    rep.add(compare("delta2.1", d2, mid @ tensor(d1, d1)))
    rep.add(compare("delta2.2", d2, mid @ tensor(ih, t, ih) @ tensor(d1, d1)))
    lhs = em @ tensor(mu, ih)
    rep.add(compare("eps.1", lhs, tensor(em, em) @ tensor(ih, delta, ih)))
    rep.add(compare("eps.2", lhs, tensor(em, em) @ tensor(ih, t, ih) @ tensor(ih, delta, ih)))
    return rep


def check_weak_hopf(h: WeakHopf) -> Report:
    rep = check_weak_bialgebra(h.wb)
    rep.title = "weak Hopf algebra"
    if not rep.ok:
        return rep
    ih, s = h.id(), h.antipode
    mu, delta = h.alg.mul, h.coalg.comul
    pis = pi_maps(h, check=False)
    rep.add(compare("antipode.piL", mu @ tensor(ih, s) @ delta, pis.piL))
    rep.add(compare("antipode.piR", mu @ tensor(s, ih) @ delta, pis.piR))
    three = mu @ tensor(mu, ih) @ tensor(s, ih, s) @ tensor(delta, ih) @ delta
    rep.add(compare("antipode.SHS", three, s))
    rep.data["antipode_invertible"] = h.antipode_inv is not None
    if h.antipode_inv is not None:
        rep.add(compare("antipode.inverse", s @ h.antipode_inv, ih))
    return rep


def check_pi_identities(h: WeakHopf) -> Report:
    """Idempotence and the standard relations between the projections and S."""
    k, n = h.field, h.dim
    s = h.antipode
    pis = pi_maps(h, check=False)
    t = swap(k, n, n)
    rep = Report("projection identities", dims={"H": n})
    for name, p in pis.items():
        rep.add(compare(f"idempotent.{name}", p @ p, p))
    rep.add(compare("pi.s.L", pis.piL, pis.piBarR @ s))
    rep.add(compare("pi.s.R", pis.piR, pis.piBarL @ s))
    rep.add(compare("s.pi.L", s @ pis.piL, pis.piR @ s))
    rep.add(compare("s.pi.R", s @ pis.piR, pis.piL @ s))
    rep.add(compare("anti-algebra", s @ h.alg.mul, h.alg.mul @ t @ tensor(s, s)))
    rep.add(compare("anti-coalgebra", h.coalg.comul @ s, t @ tensor(s, s) @ h.coalg.comul))
    if h.antipode_inv is not None:
        si = h.antipode_inv
        rep.add(compare("s.pbar.1", si @ pis.piR, pis.piBarR))
        rep.add(compare("s.pbar.2", pis.piL @ si, pis.piBarR))
    return rep


def antipode_inverse(h: WeakHopf) -> LinMap:
    try:
        return inverse(h.antipode)
    except ZeroDivisionError:
        raise SingularAntipode("antipode is not bijective") from None


# -- entwinings from comodule algebras and module coalgebras ----------------------------


def doi_entwining_rr(h, a: FinAlgebra, rho: RightComodule, c: FinCoalgebra, act: RightModule) -> WeakEntwiningRR:
    """``psiR(c (x) a) = sum a_(0) (x) c a_(1)``, checked against the four axioms."""
    k, m, n, d = a.field, a.dim, _wb(h).dim, c.dim
    psi = tensor(a.id(), act.action) @ tensor(swap(k, d, m), identity(k, n)) @ tensor(c.id(), rho.coaction)
    we = WeakEntwiningRR(a, c, psi.reshaped((d, m), (m, d)))
    rep = check_rr(we)
    if not rep.ok:
        bad = rep.failed()[0]
        raise TheoremViolation(f"induced right-right entwining fails {bad.name}", bad.witness)
    return we


def doi_entwining_ll_inverse(h: WeakHopf, a: FinAlgebra, rho: RightComodule, c: FinCoalgebra, act: RightModule) -> WeakEntwiningLL:
    """``psiL(a (x) c) = sum c S^-1(a_(1)) (x) a_(0)``, checked against the four axioms."""
    if h.antipode_inv is None:
        raise SingularAntipode("a bijective antipode is required")
    k, m, n, d = a.field, a.dim, h.dim, c.dim
    # A (x) H (x) C -> C (x) H (x) A
    perm = permute_factors(k, (m, n, d), [2, 1, 0])
    psi = (
        tensor(act.action, a.id())
        @ perm
        @ tensor(a.id(), h.antipode_inv, c.id())
        @ tensor(rho.coaction, c.id())
    )
    we = WeakEntwiningLL(a, c, psi.reshaped((m, d), (d, m)))
    rep = check_ll(we)
    if not rep.ok:
        bad = rep.failed()[0]
        raise TheoremViolation(f"induced left-left entwining fails {bad.name}", bad.witness)
    return we


def build_invertible_from_weak_hopf(
    h: WeakHopf, a: FinAlgebra, rho: RightComodule, c: FinCoalgebra | None = None, act: RightModule | None = None
) -> InvertibleWeakEntwining:
    """The invertible pair built from a bijective antipode (defaults: C = H acting by product)."""
    if c is None:
        c, act = h.coalg, h.regular_module()
    rr = doi_entwining_rr(h, a, rho, c, act)
    ll = doi_entwining_ll_inverse(h, a, rho, c, act)
    rep = check_invertible(rr, ll)
    if not rep.ok:
        bad = rep.failed()[0]
        raise TheoremViolation(f"invertibility fails {bad.name}", bad.witness)
    return InvertibleWeakEntwining(rr, ll)


def hopf_entwining(h, a: FinAlgebra, rho: RightComodule) -> WeakEntwiningRR:
    """``psiR(h (x) a) = sum a_(0) (x) h a_(1)``: the entwining on A (x) H."""
    wb = _wb(h)
    return doi_entwining_rr(wb, a, rho, wb.coalg, wb.regular_module())


def build_E_coring(h, a: FinAlgebra, rho: RightComodule) -> ACoring:
    """The coring on Im p_R inside A (x) H, with grouplike rho(1)."""
    rep = check_comodule_algebra(a, rho, _wb(h))
    if not rep.ok:
        bad = rep.failed()[0]
        raise TheoremViolation(f"not a comodule algebra: {bad.name}", bad.witness)
    we = hopf_entwining(h, a, rho)
    g = rho.coaction @ a.unit
    return build_coring_rr(we, grouplike=g)


__all__ = [
    "WeakBialgebra",
    "WeakHopf",
    "PiMaps",
    "SingularAntipode",
    "pi_maps",
    "check_weak_bialgebra",
    "check_weak_hopf",
    "check_pi_identities",
    "antipode_inverse",
    "doi_entwining_rr",
    "doi_entwining_ll_inverse",
    "build_invertible_from_weak_hopf",
    "hopf_entwining",
    "build_E_coring",
]
