"""JSON structure files: parsing with path-named errors, and serialization.

Schema (all scalars are strings such as ``"3/2"``, ``"-1"``)::

    field       "Q" or {"Fp": p}
    algebra     {"dim": n, "mul": n x n table of length-n vectors, "unit": [n]}
    coalgebra   {"dim": n, "comul": per basis element a list of [i, j, coeff], "counit": [n]}
    psiR        {"matrix": rows}   C (x) A -> A (x) C
    psiL        {"matrix": rows}   A (x) C -> C (x) A
    coaction    {"matrix": rows}   A -> A (x) C
    action      {"matrix": rows}   C (x) A -> C
    antipode    {"matrix": rows}   A -> A   (algebra and coalgebra share the carrier)
    subalgebra  {"basis": rows}    spanning vectors of a subspace of the algebra

Matrix sections may also carry ``"domain"`` and ``"codomain"`` factor lists,
which are checked against the shapes implied by the dimensions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .exactlin import QQ, Field, LinMap, Shape, Subspace
from .structures import FinAlgebra, FinCoalgebra, LeftComodule, RightComodule, RightModule
from .weak_entwining import InvertibleWeakEntwining, WeakEntwiningLL, WeakEntwiningRR
from .weak_hopf import WeakBialgebra, WeakHopf


class ParseError(ValueError):
    def __init__(self, path: str, msg: str):
        super().__init__(f"{path}: {msg}")
        self.path = path


SECTIONS = ("algebra", "coalgebra", "psiR", "psiL", "coaction", "action", "antipode", "subalgebra")


@dataclass(frozen=True, eq=False)
class StructureFile:
    field: Field
    algebra: FinAlgebra | None = None
    coalgebra: FinCoalgebra | None = None
    psiR: LinMap | None = None
    psiL: LinMap | None = None
    coaction: LinMap | None = None
    action: LinMap | None = None
    antipode: LinMap | None = None
    subalgebra: Subspace | None = None

    def need(self, *names: str):
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            raise ParseError("$", f"missing section(s): {', '.join(missing)}")

    def rr(self) -> WeakEntwiningRR:
        self.need("algebra", "coalgebra", "psiR")
        return WeakEntwiningRR(self.algebra, self.coalgebra, self.psiR)

    def ll(self) -> WeakEntwiningLL:
        self.need("algebra", "coalgebra", "psiL")
        return WeakEntwiningLL(self.algebra, self.coalgebra, self.psiL)

    def invertible(self) -> InvertibleWeakEntwining:
        return InvertibleWeakEntwining(self.rr(), self.ll())

    def comodule(self) -> RightComodule:
        self.need("coalgebra", "coaction")
        return RightComodule(self.coalgebra, self.coaction)

    def left_regular(self) -> LeftComodule:
        self.need("coalgebra")
        return LeftComodule(self.coalgebra, self.coalgebra.comul)

    def module(self) -> RightModule:
        self.need("algebra", "action")
        return RightModule(self.algebra, self.action)

    def weak_bialgebra(self) -> WeakBialgebra:
        self.need("algebra", "coalgebra")
        if self.algebra.dim != self.coalgebra.dim:
            raise ParseError("$", "algebra and coalgebra must share the carrier")
        return WeakBialgebra(self.algebra, self.coalgebra)

    def weak_hopf(self) -> WeakHopf:
        self.need("antipode")
        return WeakHopf(self.weak_bialgebra(), self.antipode)


# -- parsing ----------------------------------------------------------------------------


def _field(obj) -> Field:
    if obj in (None, "Q", "QQ"):
        return QQ
    p = None
    if isinstance(obj, dict) and set(obj) == {"Fp"}:
        p = obj["Fp"]
    elif isinstance(obj, str) and obj.startswith("Fp:"):
        p = obj[3:]
    try:
        p = int(p) if p is not None and not isinstance(p, bool) else None
    except ValueError:
        p = None
    if p is None:
        raise ParseError("$.field", f"unknown field {obj!r}")
    try:
        return Field.prime(p)
    except ValueError as exc:
        raise ParseError("$.field", str(exc)) from None


def _scalar(k: Field, x, path: str):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise ParseError(path, f"scalar must be a string, got {x!r}")
    try:
        return k.scalar(x)
    except (ValueError, TypeError) as exc:
        raise ParseError(path, str(exc)) from None


def _int(x, path: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise ParseError(path, f"expected a non-negative integer, got {x!r}")
    return x


def _list(x, path: str, length: int | None = None) -> list:
    if not isinstance(x, list):
        raise ParseError(path, "expected a list")
    if length is not None and len(x) != length:
        raise ParseError(path, f"expected {length} entries, got {len(x)}")
    return x


def _obj(x, path: str) -> dict:
    if not isinstance(x, dict):
        raise ParseError(path, "expected an object")
    return x


def _vector(k, x, path, n) -> list:
    return [_scalar(k, v, f"{path}[{i}]") for i, v in enumerate(_list(x, path, n))]


def _matrix(k: Field, sec: dict, path: str, dom: tuple, cod: tuple) -> LinMap:
    for key, want in (("domain", dom), ("codomain", cod)):
        if key in sec and list(sec[key]) != list(want):
            raise ParseError(f"{path}.{key}", f"declared {sec[key]} but expected {list(want)}")
    rows_n, cols_n = Shape(cod).dim, Shape(dom).dim
    rows = _list(sec.get("matrix"), f"{path}.matrix", rows_n)
    mat = k.zeros((rows_n, cols_n))
    for i, row in enumerate(rows):
        mat[i, :] = _vector(k, row, f"{path}.matrix[{i}]", cols_n) if cols_n else []
    return LinMap(k, dom, cod, mat)


def _algebra(k: Field, sec: dict) -> FinAlgebra:
    n = _int(sec.get("dim"), "$.algebra.dim")
    mul = _list(sec.get("mul"), "$.algebra.mul", n)
    table = {}
    for i, row in enumerate(mul):
        for j, vec in enumerate(_list(row, f"$.algebra.mul[{i}]", n)):
            table[(i, j)] = _vector(k, vec, f"$.algebra.mul[{i}][{j}]", n)
    unit = _vector(k, sec.get("unit"), "$.algebra.unit", n)
    return FinAlgebra.from_table(k, n, table, unit)


def _coalgebra(k: Field, sec: dict) -> FinCoalgebra:
    n = _int(sec.get("dim"), "$.coalgebra.dim")
    triples = []
    for b, terms in enumerate(_list(sec.get("comul"), "$.coalgebra.comul", n)):
        out = []
        for t, term in enumerate(_list(terms, f"$.coalgebra.comul[{b}]")):
            path = f"$.coalgebra.comul[{b}][{t}]"
            i, j, c = _list(term, path, 3)
            i, j = _int(i, path + "[0]"), _int(j, path + "[1]")
            if i >= n or j >= n:
                raise ParseError(path, f"index out of range for dimension {n}")
            out.append((i, j, _scalar(k, c, path + "[2]")))
        triples.append(out)
    counit = _vector(k, sec.get("counit"), "$.coalgebra.counit", n)
    return FinCoalgebra.from_triples(k, n, triples, counit)


def from_dict(doc) -> StructureFile:
    doc = _obj(doc, "$")
    unknown = set(doc) - set(SECTIONS) - {"field"}
    if unknown:
        raise ParseError("$", f"unknown key(s): {', '.join(sorted(unknown))}")
    k = _field(doc.get("field"))
    secs = {name: _obj(doc[name], f"$.{name}") for name in SECTIONS if name in doc}
    alg = _algebra(k, secs["algebra"]) if "algebra" in secs else None
    coalg = _coalgebra(k, secs["coalgebra"]) if "coalgebra" in secs else None
    m = alg.dim if alg else None
    n = coalg.dim if coalg else None

    def needs(name, *dims):
        if any(d is None for d in dims):
            raise ParseError(f"$.{name}", "needs both algebra and coalgebra" if len(dims) > 1 else "needs its carrier section")

    maps = {}
    if "psiR" in secs:
        needs("psiR", m, n)
        maps["psiR"] = _matrix(k, secs["psiR"], "$.psiR", (n, m), (m, n))
    if "psiL" in secs:
        needs("psiL", m, n)
        maps["psiL"] = _matrix(k, secs["psiL"], "$.psiL", (m, n), (n, m))
    if "coaction" in secs:
        needs("coaction", m, n)
        maps["coaction"] = _matrix(k, secs["coaction"], "$.coaction", (m,), (m, n))
    if "action" in secs:
        needs("action", m, n)
        maps["action"] = _matrix(k, secs["action"], "$.action", (n, m), (n,))
    if "antipode" in secs:
        needs("antipode", m)
        maps["antipode"] = _matrix(k, secs["antipode"], "$.antipode", (m,), (m,))
    if "subalgebra" in secs:
        needs("subalgebra", m)
        rows = _list(secs["subalgebra"].get("basis"), "$.subalgebra.basis")
        vecs = [_vector(k, r, f"$.subalgebra.basis[{i}]", m) for i, r in enumerate(rows)]
        maps["subalgebra"] = Subspace.from_vectors(k, (m,), k.array(vecs) if vecs else [])
    return StructureFile(k, alg, coalg, **maps)


def loads(text: str) -> StructureFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("$", f"invalid JSON: {exc.msg} at line {exc.lineno}") from None
    return from_dict(doc)


def load(path: str) -> StructureFile:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


# -- serialization ----------------------------------------------------------------------


def _fmt_rows(k: Field, mat) -> list:
    return [[k.format(x) for x in row] for row in mat]


def _map_section(f: LinMap) -> dict:
    return {
        "domain": list(f.domain.factors),
        "codomain": list(f.codomain.factors),
        "matrix": _fmt_rows(f.field, f.mat),
    }


def to_dict(sf: StructureFile) -> dict:
    k = sf.field
    out: dict = {"field": "Q" if k.p is None else {"Fp": k.p}}
    if sf.algebra is not None:
        a = sf.algebra
        n = a.dim
        out["algebra"] = {
            "dim": n,
            "mul": [[[k.format(x) for x in a.mul.mat[:, i * n + j]] for j in range(n)] for i in range(n)],
            "unit": [k.format(x) for x in a.unit.mat[:, 0]],
        }
    if sf.coalgebra is not None:
        c = sf.coalgebra
        n = c.dim
        comul = []
        for b in range(n):
            col = c.comul.mat[:, b]
            comul.append([[int(r // n), int(r % n), k.format(col[r])] for r in range(n * n) if col[r] != 0])
        out["coalgebra"] = {"dim": n, "comul": comul, "counit": [k.format(x) for x in c.counit.mat[0, :]]}
    for name in ("psiR", "psiL", "coaction", "action", "antipode"):
        f = getattr(sf, name)
        if f is not None:
            out[name] = _map_section(f)
    if sf.subalgebra is not None:
        out["subalgebra"] = {"basis": _fmt_rows(k, sf.subalgebra.basis)}
    return out


def dumps(sf: StructureFile) -> str:
    return json.dumps(to_dict(sf), indent=2)


def from_parts(field: Field, parts: dict) -> StructureFile:
    """Wrap a dict of structure maps (as produced by the demo catalog)."""
    return StructureFile(field, **parts)
