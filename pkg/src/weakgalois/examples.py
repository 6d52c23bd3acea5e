"""Concrete structures: groupoid and group algebras, matrix coalgebras, demos.

Every generator validates its output with the matching checker before
returning it.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .exactlin import (
    QQ,
    Field,
    LinMap,
    QuotientSpace,
    Shape,
    Subspace,
    identity,
    image,
    permute_factors,
    quotient,
    swap,
    tensor,
    zero_map,
)
from .report import Check, HypothesisFailed, Report, TheoremViolation, compare, require, truth
from .structures import FinAlgebra, FinCoalgebra, RightComodule, RightModule, check_module_coalgebra
from .weak_entwining import WeakEntwiningRR, check_rr
from .weak_hopf import WeakBialgebra, WeakHopf, check_weak_hopf, pi_maps


@dataclass(frozen=True)
class GroupoidSpec:
    """A finite groupoid.  ``compose[(g, h)]`` is ``g o h``, defined iff ``source[g] == target[h]``."""

    objects: tuple
    morphisms: tuple
    source: dict
    target: dict
    compose: dict
    inverse: dict
    identities: dict = dc_field(default_factory=dict)

    def validate(self) -> "GroupoidSpec":
        mors = set(self.morphisms)
        if len(mors) != len(self.morphisms):
            raise ValueError("duplicate morphisms")
        for g in self.morphisms:
            if self.source.get(g) not in self.objects or self.target.get(g) not in self.objects:
                raise ValueError(f"morphism {g!r} has no source/target object")
        for x in self.objects:
            e = self.identities.get(x)
            if e not in mors or self.source[e] != x or self.target[e] != x:
                raise ValueError(f"object {x!r} lacks an identity")
        for g in self.morphisms:
            for h in self.morphisms:
                composable = self.source[g] == self.target[h]
                if composable != ((g, h) in self.compose):
                    raise ValueError(f"composition of {g!r} after {h!r} misdefined")
                if composable:
                    gh = self.compose[(g, h)]
                    if self.source[gh] != self.source[h] or self.target[gh] != self.target[g]:
                        raise ValueError(f"{g!r} o {h!r} has wrong endpoints")
        for g in self.morphisms:
            if self.compose.get((g, self.identities[self.source[g]])) != g:
                raise ValueError("right identity law fails")
            if self.compose.get((self.identities[self.target[g]], g)) != g:
                raise ValueError("left identity law fails")
            gi = self.inverse.get(g)
            if gi not in mors:
                raise ValueError(f"{g!r} has no inverse")
            if self.compose.get((g, gi)) != self.identities[self.target[g]]:
                raise ValueError(f"{g!r} o inverse is not an identity")
            if self.compose.get((gi, g)) != self.identities[self.source[g]]:
                raise ValueError(f"inverse o {g!r} is not an identity")
        for (f, g), fg in self.compose.items():
            for h in self.morphisms:
                if self.source[g] == self.target[h]:
                    if self.compose[(fg, h)] != self.compose[(f, self.compose[(g, h)])]:
                        raise ValueError("composition is not associative")
        return self


def pair_groupoid(n: int) -> GroupoidSpec:
    """Objects 1..n, one arrow ``g_ij : j -> i`` per ordered pair; ``g_ij g_kl = [j=k] g_il``."""
    objs = tuple(range(1, n + 1))
    mors = tuple(f"g{i}{j}" for i in objs for j in objs)
    src = {f"g{i}{j}": j for i in objs for j in objs}
    tgt = {f"g{i}{j}": i for i in objs for j in objs}
    comp = {(f"g{i}{j}", f"g{j}{l}"): f"g{i}{l}" for i in objs for j in objs for l in objs}
    inv = {f"g{i}{j}": f"g{j}{i}" for i in objs for j in objs}
    ids = {i: f"g{i}{i}" for i in objs}
    return GroupoidSpec(objs, mors, src, tgt, comp, inv, ids).validate()


def discrete_groupoid(n: int) -> GroupoidSpec:
    """n objects and only identity arrows."""
    objs = tuple(range(1, n + 1))
    mors = tuple(f"e{i}" for i in objs)
    m = {f"e{i}": i for i in objs}
    comp = {(f"e{i}", f"e{i}"): f"e{i}" for i in objs}
    inv = {f"e{i}": f"e{i}" for i in objs}
    return GroupoidSpec(objs, mors, m, dict(m), comp, inv, {i: f"e{i}" for i in objs}).validate()


def group_groupoid(table: Sequence[Sequence[int]]) -> GroupoidSpec:
    """One-object groupoid from a multiplication table on ``0..n-1``."""
    n = len(table)
    if any(len(row) != n for row in table):
        raise ValueError("group table must be square")
    units = [e for e in range(n) if all(table[e][x] == x and table[x][e] == x for x in range(n))]
    if not units:
        raise ValueError("group table has no identity")
    e = units[0]
    inv = {}
    for x in range(n):
        ys = [y for y in range(n) if table[x][y] == e]
        if len(ys) != 1:
            raise ValueError(f"element {x} has no unique inverse")
        inv[x] = ys[0]
    mors = tuple(range(n))
    comp = {(x, y): table[x][y] for x in mors for y in mors}
    point = {x: 0 for x in mors}
    return GroupoidSpec((0,), mors, point, dict(point), comp, inv, {0: e}).validate()


def groupoid_algebra(g: GroupoidSpec, field: Field = QQ) -> WeakHopf:
    """Groupoid algebra: product by composition (zero if not composable), Delta(g) = g (x) g."""
    g.validate()
    n = len(g.morphisms)
    idx = {x: i for i, x in enumerate(g.morphisms)}
    table = {}
    for (a, b), ab in g.compose.items():
        vec = [0] * n
        vec[idx[ab]] = 1
        table[(idx[a], idx[b])] = vec
    unit = [0] * n
    for x in g.objects:
        unit[idx[g.identities[x]]] = 1
    alg = FinAlgebra.from_table(field, n, table, unit)
    coalg = FinCoalgebra.from_triples(field, n, [[(i, i, 1)] for i in range(n)], [1] * n)
    s = field.zeros((n, n))
    for x in g.morphisms:
        s[idx[g.inverse[x]], idx[x]] = 1
    h = WeakHopf(WeakBialgebra(alg, coalg), LinMap(field, (n,), (n,), s))
    rep = check_weak_hopf(h)
    if not rep.ok:
        bad = rep.failed()[0]
        raise TheoremViolation(f"groupoid algebra fails {bad.name}", bad.witness)
    return h


def group_algebra(table: Sequence[Sequence[int]], field: Field = QQ) -> WeakHopf:
    return groupoid_algebra(group_groupoid(table), field)


def cyclic_group_table(n: int) -> list:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def diagonal_weak_hopf(n: int, field: Field = QQ) -> WeakHopf:
    """``k^n`` with ``Delta(e_i) = e_i (x) e_i``: a weak Hopf algebra, genuinely weak for n > 1."""
    return groupoid_algebra(discrete_groupoid(n), field)


def matrix_coalgebra(n: int, field: Field = QQ) -> FinCoalgebra:
    """Basis ``e_ij`` (index ``i*n + j``), ``Delta(e_ij) = sum_k e_ik (x) e_kj``, ``eps(e_ij) = [i=j]``."""
    if n < 1:
        raise ValueError("n must be positive")
    triples = [
        [(i * n + k, k * n + j, 1) for k in range(n)] for i in range(n) for j in range(n)
    ]
    counit = [1 if i == j else 0 for i in range(n) for j in range(n)]
    return FinCoalgebra.from_triples(field, n * n, triples, counit).validate()


def grouplike_coalgebra(n: int, field: Field = QQ) -> FinCoalgebra:
    """The coalgebra of a finite set: every basis vector grouplike."""
    return FinCoalgebra.from_triples(field, n, [[(i, i, 1)] for i in range(n)], [1] * n).validate()


# -- comodule subalgebras ----------------------------------------------------------------


def _second_preimage(q: QuotientSpace, j: Subspace) -> LinMap:
    """Another section of ``pi``: every representative shifted by the first relator."""
    k = q.sect.field
    shift = np.outer(j.basis[0], np.ones(q.dim, dtype=np.int64))
    mat = k.reduce(q.sect.mat + k.array(shift))
    return LinMap(k, q.sect.domain, q.sect.codomain, mat)


def comodule_subalgebra_pipeline(h: WeakHopf, a_sub: Subspace) -> Report:
    """Quotient coalgebra ``C = H / A^R H`` and the extension ``B <= H`` it defines, with every step checked.

    ``A^R`` is taken as ``span{a - Pibar^R(a)}``; the intersection reading is
    reported alongside.
    """
    from .galois import (
        canbar,
        canonical_entwining_from_section,
        check_split_section,
        collapse,
        galois_context,
    )

    k, n = h.field, h.dim
    mu, delta, eps = h.alg.mul, h.coalg.comul, h.coalg.counit
    ih = h.id()
    rep = Report("comodule subalgebra", dims={"H": n, "A": a_sub.dim})
    if h.antipode_inv is None:
        raise HypothesisFailed("bijective antipode", rep)

    inc = a_sub.inclusion()
    hyp = (
        a_sub.contains_image(h.alg.unit)
        and a_sub.contains_image(mu @ tensor(inc, inc))
        and Subspace.from_vectors(k, (n, n), np.kron(k.eye(n), a_sub.basis) if a_sub.dim else []).contains_image(delta @ inc)
    )
    rep.add(truth("hypothesis comodule subalgebra", hyp))
    if not hyp:
        raise HypothesisFailed("comodule subalgebra", rep)

    pibar_r = pi_maps(h).piBarR
    literal = image(pibar_r).intersect(a_sub)
    a_r = image((ih - pibar_r) @ inc)
    rep.dims.update({"A^R": a_r.dim, "A^R (intersection reading)": literal.dim})

    # J = A^R H and the quotient coalgebra
    j = image(mu @ tensor(a_r.inclusion(), ih))
    ij = j.inclusion()
    jj = Subspace.from_vectors(
        k, (n, n), np.concatenate([np.kron(k.eye(n), j.basis), np.kron(j.basis, k.eye(n))]) if j.dim else []
    )
    rep.dims["J"] = j.dim
    rep.add(require(truth("coideal", jj.contains_image(delta @ ij))))
    rep.add(require(compare("counit vanishes on J", eps @ ij, zero_map(k, ij.domain, ()))))
    q = quotient(Shape((n,)), j)
    pi = q.proj
    d = q.dim
    pp = tensor(pi, pi)
    sects = [q.sect] + ([_second_preimage(q, j)] if j.dim else [])
    rep.dims["C"] = d

    comul_c = pp @ delta @ q.sect
    counit_c = eps @ q.sect
    rep.add(require(compare("comultiplication induced", comul_c @ pi, pp @ delta)))
    rep.add(require(compare("counit induced", counit_c @ pi, eps)))
    c = FinCoalgebra(k, d, comul_c, counit_c).validate()

    acts = [pi @ mu @ tensor(s, ih) for s in sects]
    act = RightModule(h.alg, acts[0])
    rep.add(require(compare("action induced", act.action @ tensor(pi, ih), pi @ mu)))
    mc = check_module_coalgebra(c, act, h.wb)
    for ch in mc.checks:
        rep.add(require(Check(f"module coalgebra {ch.name}", ch.ok, ch.witness)))

    # c (x) h -> h_(1) (x) pi(h~ h_(2))
    flip = permute_factors(k, (n, n, n), [1, 0, 2])
    psis = [
        (tensor(ih, pi @ mu) @ flip @ tensor(ih, delta) @ tensor(s, ih)).reshaped((d, n), (n, d))
        for s in sects
    ]
    rr = WeakEntwiningRR(h.alg, c, psis[0])
    for ch in check_rr(rr).checks:
        rep.add(require(ch))
    rho = RightComodule(c, tensor(ih, pi) @ delta)
    ctx = galois_context(rr, rho)
    rep.dims["B"] = ctx.B.dim
    rep.add(require(truth("A inside coinvariants", a_sub <= ctx.B)))

    bal = ctx.balancedAA
    bproj = bal.proj.reshaped((n, n), None)
    s_ = h.antipode
    sigmas = [
        bproj @ tensor(mu, ih) @ tensor(ih, s_, ih) @ tensor(ih, delta) @ tensor(ih, s)
        for s in sects
    ]
    split = check_split_section(ctx, sigmas[0])
    rep.add(require(collapse(split)))
    rep.add(require(compare("sigma after canbar", sigmas[0] @ canbar(ctx), identity(k, bal.dim))))
    if len(sects) > 1:
        rep.add(require(compare("preimage independence: action", acts[1], acts[0])))
        rep.add(require(compare("preimage independence: entwining", psis[1], psis[0])))
        rep.add(require(compare("preimage independence: sigma", sigmas[1], sigmas[0])))
    we = canonical_entwining_from_section(ctx, sigmas[0])
    rep.add(require(compare("canonical entwining is the homogeneous one", we.psi, rr.psi)))
    rep.data.update({"galois": True, "preimages_tested": len(sects)})
    return rep


# -- demo catalog -----------------------------------------------------------------------------


def _flip(field: Field, c: FinCoalgebra, a: FinAlgebra) -> LinMap:
    return swap(field, c.dim, a.dim)


def _hopf_demo(h: WeakHopf, subalgebra=None) -> dict:
    from .weak_hopf import build_invertible_from_weak_hopf

    rho = h.regular_comodule()
    inv = build_invertible_from_weak_hopf(h, h.alg, rho)
    return {
        "algebra": h.alg,
        "coalgebra": h.coalg,
        "antipode": h.antipode,
        "coaction": rho.coaction,
        "action": h.alg.mul,
        "psiR": inv.rr.psi,
        "psiL": inv.ll.psi,
        "subalgebra": subalgebra,
    }


def _demo_k(k):
    return _hopf_demo(group_algebra([[0]], k), [[1]])


def _demo_z2(k):
    return _hopf_demo(group_algebra(cyclic_group_table(2), k), [[1, 0]])


def _demo_diag2(k):
    return _hopf_demo(diagonal_weak_hopf(2, k), [[1, 0], [0, 1]])


def _demo_diag3(k):
    return _hopf_demo(diagonal_weak_hopf(3, k), [[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def _demo_pairgroupoid2(k):
    return _hopf_demo(groupoid_algebra(pair_groupoid(2), k), [[1, 0, 0, 0], [0, 0, 0, 1]])


def _demo_matcoalg2(k):
    return {"coalgebra": matrix_coalgebra(2, k)}


def _demo_swapdiag2(k):
    """The diagonal weak Hopf data with psiR replaced by the flip."""
    h = diagonal_weak_hopf(2, k)
    return {
        "algebra": h.alg,
        "coalgebra": h.coalg,
        "coaction": h.coalg.comul,
        "action": h.alg.mul,
        "psiR": _flip(k, h.coalg, h.alg),
    }


def _demo_trivialz2(k):
    """``k x k`` with the trivial coaction ``a -> a (x) e_0`` into the coalgebra of Z/2."""
    a = diagonal_weak_hopf(2, k).alg
    c = grouplike_coalgebra(2, k)
    e0 = LinMap(k, (), (2,), k.array([[1], [0]]))
    return {
        "algebra": a,
        "coalgebra": c,
        "coaction": tensor(a.id(), e0),
        "psiR": _flip(k, c, a),
        "psiL": swap(k, a.dim, c.dim),
    }


DEMOS = {
    "k": _demo_k,
    "z2": _demo_z2,
    "diag2": _demo_diag2,
    "diag3": _demo_diag3,
    "pairgroupoid2": _demo_pairgroupoid2,
    "matcoalg2": _demo_matcoalg2,
    "swapdiag2": _demo_swapdiag2,
    "trivialz2": _demo_trivialz2,
}

POSITIVE_DEMOS = ("k", "z2", "diag2", "diag3", "pairgroupoid2", "matcoalg2")
HOPF_DEMOS = ("k", "z2", "diag2", "diag3", "pairgroupoid2")


def demo_parts(name: str, field: Field = QQ) -> dict:
    """The named demo as a dict of structure maps (keys as in the structure file)."""
    try:
        make = DEMOS[name]
    except KeyError:
        raise KeyError(f"unknown demo {name!r}; known: {', '.join(DEMOS)}") from None
    parts = make(field)
    sub = parts.get("subalgebra")
    if sub is not None:
        n = parts["algebra"].dim
        parts["subalgebra"] = Subspace.from_vectors(field, (n,), field.array(sub))
    elif "subalgebra" in parts:
        del parts["subalgebra"]
    return parts
