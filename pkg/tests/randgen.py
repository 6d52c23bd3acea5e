"""Random weak entwinings over small prime fields, found by filtering random maps.

A batched numpy evaluation of the four right-right axioms screens uniformly
random candidate matrices; survivors are re-checked with the library checker.
"""

import numpy as np

from weakgalois.exactlin import Field, LinMap
from weakgalois.structures import FinAlgebra, FinCoalgebra


def algebra_pool(k: Field) -> dict:
    """Small unital algebras by name."""
    out = {"k": FinAlgebra.from_table(k, 1, {(0, 0): [1]}, [1])}
    out["k^2"] = FinAlgebra.from_table(k, 2, {(0, 0): [1, 0], (1, 1): [0, 1]}, [1, 1])
    out["k[x]/x^2"] = FinAlgebra.from_table(
        k, 2, {(0, 0): [1, 0], (0, 1): [0, 1], (1, 0): [0, 1]}, [1, 0]
    )
    out["k^3"] = FinAlgebra.from_table(
        k, 3, {(i, i): [int(j == i) for j in range(3)] for i in range(3)}, [1, 1, 1]
    )
    tab = {}
    for i in range(3):
        for j in range(3):
            if i + j < 3:
                tab[(i, j)] = [int(t == i + j) for t in range(3)]
    out["k[x]/x^3"] = FinAlgebra.from_table(k, 3, tab, [1, 0, 0])
    for a in out.values():
        a.validate()
    return out


def coalgebra_pool(k: Field) -> dict:
    out = {}
    for n in (1, 2, 3):
        out[f"set{n}"] = FinCoalgebra.from_triples(k, n, [[(i, i, 1)] for i in range(n)], [1] * n)
    for n in (2, 3):
        triples = [[(i, d - i, 1) for i in range(d + 1)] for d in range(n)]
        out[f"divided{n}"] = FinCoalgebra.from_triples(k, n, triples, [1] + [0] * (n - 1))
    for c in out.values():
        c.validate()
    return out


def _kron_right(x, n):
    """Batch ``X (x) I_n``."""
    b, r, c = x.shape
    return np.einsum("bij,kl->bikjl", x, np.eye(n, dtype=np.int64)).reshape(b, r * n, c * n)


def _kron_left(n, x):
    """Batch ``I_n (x) X``."""
    b, r, c = x.shape
    return np.einsum("kl,bij->bkilj", np.eye(n, dtype=np.int64), x).reshape(b, r * n, c * n)


def batch_axioms(a: FinAlgebra, c: FinCoalgebra, psis: np.ndarray, p: int) -> np.ndarray:
    """Boolean mask of candidates satisfying (re1)-(re4); ``psis`` has shape (B, m*n, n*m)."""
    m, n = a.dim, c.dim
    mu = np.asarray(a.mul.mat, dtype=np.int64)
    u = np.asarray(a.unit.mat, dtype=np.int64)
    de = np.asarray(c.comul.mat, dtype=np.int64)
    ep = np.asarray(c.counit.mat, dtype=np.int64)
    ia, ic = np.eye(m, dtype=np.int64), np.eye(n, dtype=np.int64)

    def mod(x):
        return x % p

    def same(x, y):
        return np.all(mod(x) == mod(y), axis=(1, 2))

    # the linear axioms (re2), (re4) first, then the quadratic ones on survivors
    idx = np.arange(len(psis))
    P = psis
    unit_leg = P @ np.kron(ic, u)  # (B, m*n, n)
    e_one = np.kron(ia, ep) @ unit_leg  # (B, m, n)
    keep = same(np.kron(ia, ep) @ P, mu @ _kron_right(e_one, m))
    rhs = np.kron(np.kron(ia, ep), ic) @ mod(_kron_right(unit_leg, n)) @ de
    keep &= same(unit_leg, rhs)
    idx, P = idx[keep], P[keep]
    # re1
    lhs = P @ np.kron(ic, mu)
    rhs = np.kron(mu, ic) @ mod(_kron_left(m, P) @ _kron_right(P, m))
    keep = same(lhs, rhs)
    # re3
    lhs = np.kron(ia, de) @ P
    rhs = mod(_kron_right(P, n) @ _kron_left(n, P)) @ np.kron(de, ia)
    keep &= same(lhs, rhs)
    ok = np.zeros(len(psis), dtype=bool)
    ok[idx[keep]] = True
    return ok


def _candidates(rng, p: int, size: int, batch: int):
    """Uniform random candidates; small spaces are listed exhaustively in random order."""
    total = p ** (size * size)
    if total <= batch:
        codes = rng.permutation(total)
        digits = (codes[:, None] // p ** np.arange(size * size)) % p
        return digits.reshape(total, size, size).astype(np.int64), True
    return rng.integers(0, p, size=(batch, size, size), dtype=np.int64), False


def random_weak_entwinings(count: int, seed: int = 0, max_batches: int = 400, batch: int = 8192):
    """Collect ``count`` distinct (A, C, psi) triples over F_2 or F_3 with dims at most 3."""
    rng = np.random.default_rng(seed)
    setups = []
    for p in (2, 3):
        k = Field.prime(p)
        algs, coalgs = algebra_pool(k), coalgebra_pool(k)
        for an, a in algs.items():
            for cn, c in coalgs.items():
                size = a.dim * c.dim
                if size <= 4 and (p == 2 or size <= 3):
                    setups.append((p, k, an, a, cn, c))
    found, seen, done = [], set(), set()
    for _ in range(max_batches):
        live = [i for i in range(len(setups)) if i not in done]
        if not live:
            break
        i = live[rng.integers(len(live))]
        p, k, an, a, cn, c = setups[i]
        cand, exhaustive = _candidates(rng, p, a.dim * c.dim, batch)
        if exhaustive:
            done.add(i)
        for psi in cand[batch_axioms(a, c, cand, p)]:
            key = (p, an, cn, psi.tobytes())
            if key in seen:
                continue
            seen.add(key)
            found.append((k, a, c, LinMap(k, (c.dim, a.dim), (a.dim, c.dim), psi)))
            if len(found) == count:
                return found
    return found
