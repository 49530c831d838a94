"""Finitely generated abelian groups, homomorphisms and chain complexes.

Everything is exact: matrices are numpy arrays of ``dtype=object`` holding
Python integers, so nothing overflows.  A group is a presentation

    Z^ngens / (column span of ``relations``)

and an element is an integer column vector on the generators.  Presentations
handed in by the caller are kept verbatim; groups produced by quotient
operations come out in *diagonal form* (generators are cyclic summands,
torsion orders d1 | d2 | ... first, then free generators).
"""

from __future__ import annotations

from functools import cached_property

from math import gcd

import numpy as np

__all__ = [
    "int_matrix",
    "identity",
    "zeros",
    "smith_normal_form",
    "FGAbelianGroup",
    "GroupHom",
    "ChainComplexZ",
    "NotAComplexError",
    "IllDefinedMapError",
    "cokernel_of_relations",
    "sparse_cokernel",
]


class IllDefinedMapError(ValueError):
    """A matrix does not carry source relations into target relations."""


class NotAComplexError(ValueError):
    """Consecutive differentials do not compose to zero."""


# ---------------------------------------------------------------------------
# integer matrices

def int_matrix(data, nrows: int | None = None, ncols: int | None = None) -> np.ndarray:
    """Coerce ``data`` to a 2-d object array of Python ints."""
    if isinstance(data, np.ndarray) and data.dtype == object and data.ndim == 2:
        return data
    arr = np.array(data, dtype=object)
    if arr.size == 0:
        r = nrows if nrows is not None else (arr.shape[0] if arr.ndim >= 1 else 0)
        c = ncols if ncols is not None else (arr.shape[1] if arr.ndim == 2 else 0)
        return np.zeros((r, c), dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = int(v)
    return out


def zeros(r: int, c: int) -> np.ndarray:
    out = np.empty((r, c), dtype=object)
    out.fill(0)
    return out


def _maxabs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return max(abs(int(a.max())), abs(int(a.min())))


def imatmul(*ms: np.ndarray) -> np.ndarray:
    """Exact integer product, done in int64 when no overflow is possible."""
    out = ms[0]
    for b in ms[1:]:
        a = out
        bound = _maxabs(a) * _maxabs(b) * max(a.shape[1], 1)
        if bound < 2 ** 62:
            out = (a.astype(np.int64) @ b.astype(np.int64)).astype(object)
        else:
            out = a @ b
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = 1
    return out


def _mat(rows: list[list[int]], r: int, c: int) -> np.ndarray:
    out = zeros(r, c)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v:
                out[i, j] = v
    return out


def _snf_lists(a: list[list[int]], m: int, n: int, want_uinv: bool = False):
    # Row-major lists; U, V, Uinv updated alongside so that U a0 V = D.
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)] if want_uinv else None

    def row_add(dst, src, c):  # row_dst += c * row_src
        ra, rs = a[dst], a[src]
        for j in range(n):
            if rs[j]:
                ra[j] += c * rs[j]
        ud, us = U[dst], U[src]
        for j in range(m):
            if us[j]:
                ud[j] += c * us[j]
        if Ui is not None:
            for row in Ui:  # column op: col_src -= c * col_dst
                if row[dst]:
                    row[src] -= c * row[dst]

    def row_swap(i, k):
        a[i], a[k] = a[k], a[i]
        U[i], U[k] = U[k], U[i]
        if Ui is not None:
            for row in Ui:
                row[i], row[k] = row[k], row[i]

    def col_add(dst, src, c):  # col_dst += c * col_src
        for row in a:
            if row[src]:
                row[dst] += c * row[src]
        for row in V:
            if row[src]:
                row[dst] += c * row[src]

    def col_swap(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            row_swap(t, bi)
        if bj != t:
            col_swap(t, bj)
        while True:
            piv = a[t][t]
            clean = True
            for i in range(t + 1, m):
                v = a[i][t]
                if v:
                    q = _round_div(v, piv)
                    if q:
                        row_add(i, t, -q)
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, n):
                v = a[t][j]
                if v:
                    q = _round_div(v, piv)
                    if q:
                        col_add(j, t, -q)
                    if a[t][j]:
                        clean = False
            if not clean:
                best = None
                for i in range(t + 1, m):
                    v = a[i][t]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, None)
                for j in range(t + 1, n):
                    v = a[t][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), None, j)
                if best is not None and best[0] < abs(piv):
                    if best[1] is not None:
                        row_swap(t, best[1])
                    else:
                        col_swap(t, best[2])
                continue
            bad = None
            for i in range(t + 1, m):
                row = a[i]
                for j in range(t + 1, n):
                    if row[j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
            if Ui is not None:
                for row in Ui:
                    row[t] = -row[t]
        t += 1
    return U, a, V, Ui, t


def _round_div(v: int, piv: int) -> int:
    q, r = divmod(v, piv)
    if 2 * abs(r) > abs(piv):
        q += 1 if (r > 0) == (piv > 0) else 0
    return q


def smith_normal_form(m) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return ``(U, D, V)`` with ``U @ m @ V == D``.

    ``U`` and ``V`` are unimodular, ``D`` is diagonal with non-negative
    entries and each diagonal entry divides the next.  The pivot is always
    the smallest non-zero entry in absolute value, which keeps intermediate
    coefficients small on the matrices this package produces.
    """
    m = int_matrix(m)
    r, c = m.shape
    U, D, V, _, _ = _snf_lists([list(map(int, row)) for row in m], r, c)
    return _mat(U, r, r), _mat(D, r, c), _mat(V, c, c)


def _snf_full(m: np.ndarray):
    r, c = m.shape
    U, D, V, Ui, rank = _snf_lists([list(map(int, row)) for row in m], r, c, want_uinv=True)
    diag = [D[i][i] for i in range(rank)]
    return U, diag, V, Ui, rank


# ---------------------------------------------------------------------------
# quotient presentations

def cokernel_of_relations(ngens: int, relations: np.ndarray):
    """Diagonalise ``Z^ngens / span(relations)``.

    Returns ``(orders, proj, lift)``: the cyclic orders of the new generators
    (``0`` means infinite cyclic), the projection matrix from old to new
    generators and a lift matrix from new to old generators.
    """
    relations = int_matrix(relations, ngens, 0)
    if relations.shape[1] == 0 or not relations.any():
        return [0] * ngens, identity(ngens), identity(ngens)
    U, diag, _, Ui, rank = _snf_full(relations)
    keep = [i for i in range(ngens) if i >= rank or diag[i] != 1]
    orders = [diag[i] if i < rank else 0 for i in keep]
    proj = zeros(len(keep), ngens)
    lift = zeros(ngens, len(keep))
    for k, i in enumerate(keep):
        d = orders[k]
        for j in range(ngens):
            v = U[i][j]
            proj[k, j] = v % d if d else v
            lift[j, k] = Ui[j][i]
    return orders, proj, lift


def sparse_cokernel(ngens: int, relations: list[dict[int, int]]):
    """Like :func:`cokernel_of_relations` for large sparse relation sets.

    Unit-coefficient relations are eliminated first (each one removes a
    generator), then the remaining dense block goes through Smith normal form.
    """
    rels: dict[int, dict[int, int]] = {}
    occ: dict[int, set[int]] = {}
    for rid, rel in enumerate(relations):
        rel = {g: c for g, c in rel.items() if c}
        if not rel:
            continue
        rels[rid] = rel
        for g in rel:
            occ.setdefault(g, set()).add(rid)

    expr: dict[int, dict[int, int]] = {}
    order: list[int] = []
    pending = sorted(rels)
    while pending:
        progress = False
        for rid in pending:
            rel = rels.get(rid)
            if rel is None:
                continue
            units = [g for g, c in rel.items() if c in (1, -1)]
            if not units:
                continue
            g = min(units, key=lambda x: (len(occ.get(x, ())), x))
            c = rel[g]
            # g = -c * sum(others)   (c = +-1)
            sub = {h: -c * v for h, v in rel.items() if h != g}
            expr[g] = sub
            order.append(g)
            for h in rel:
                occ[h].discard(rid)
            del rels[rid]
            for other in list(occ.get(g, ())):
                orel = rels[other]
                k = orel.pop(g)
                for h, v in sub.items():
                    nv = orel.get(h, 0) + k * v
                    if nv:
                        if h not in orel:
                            occ.setdefault(h, set()).add(other)
                        orel[h] = nv
                    elif h in orel:
                        del orel[h]
                        occ[h].discard(other)
                if not orel:
                    del rels[other]
            occ[g] = set()
            progress = True
        if not progress:
            break
        pending = sorted(rels)

    eliminated = set(expr)
    remaining = [g for g in range(ngens) if g not in eliminated]
    pos = {g: i for i, g in enumerate(remaining)}
    for g in reversed(order):
        resolved: dict[int, int] = {}
        for h, v in expr[g].items():
            if h in pos:
                resolved[h] = resolved.get(h, 0) + v
            else:
                for h2, v2 in expr[h].items():
                    resolved[h2] = resolved.get(h2, 0) + v * v2
        expr[g] = {h: v for h, v in resolved.items() if v}

    orders, p2, l2 = _blockwise_cokernel(len(remaining), [{pos[h]: v for h, v in rel.items()} for rel in rels.values()])
    nnew = len(orders)
    proj = zeros(nnew, ngens)
    for g in range(ngens):
        if g in pos:
            proj[:, g] = p2[:, pos[g]]
        else:
            col = [0] * nnew
            for h, v in expr[g].items():
                pc = p2[:, pos[h]]
                for k in range(nnew):
                    if pc[k]:
                        col[k] += v * pc[k]
            for k in range(nnew):
                d = orders[k]
                proj[k, g] = col[k] % d if d else col[k]
    lift = zeros(ngens, nnew)
    for g, i in pos.items():
        lift[g, :] = l2[i, :]
    return orders, proj, lift


def _blockwise_cokernel(n: int, rels: list[dict[int, int]]):
    """Cokernel computed separately on each connected block of generators."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for rel in rels:
        gs = list(rel)
        for g in gs[1:]:
            a, b = find(gs[0]), find(g)
            if a != b:
                parent[a] = b
    blocks: dict[int, list[int]] = {}
    for g in range(n):
        blocks.setdefault(find(g), []).append(g)
    brels: dict[int, list[dict[int, int]]] = {}
    for rel in rels:
        brels.setdefault(find(next(iter(rel))), []).append(rel)
    orders: list[int] = []
    pieces = []
    for root in sorted(blocks, key=lambda r: blocks[r][0]):
        gens = blocks[root]
        local = {g: i for i, g in enumerate(gens)}
        rs = brels.get(root, [])
        if len(gens) == 1:
            d = 0
            for rel in rs:
                d = gcd(d, abs(next(iter(rel.values()))))
            if d == 1:
                continue
            pieces.append((gens, [d], identity(1), identity(1)))
            orders.append(d)
            continue
        dense = zeros(len(gens), len(rs))
        for k, rel in enumerate(rs):
            for h, v in rel.items():
                dense[local[h], k] = v
        o, pr, li = cokernel_of_relations(len(gens), dense)
        pieces.append((gens, o, pr, li))
        orders.extend(o)
    proj = zeros(len(orders), n)
    lift = zeros(n, len(orders))
    k = 0
    for gens, o, pr, li in pieces:
        for a in range(len(o)):
            for b, g in enumerate(gens):
                proj[k + a, g] = pr[a, b]
                lift[g, k + a] = li[b, a]
        k += len(o)
    return orders, proj, lift


# ---------------------------------------------------------------------------
# groups

class FGAbelianGroup:
    """A finitely generated abelian group given by generators and relations.

    ``relations`` has one column per relation.  Use :meth:`cyclic` or
    :meth:`free` for the common cases.
    """

    __slots__ = ("ngens", "relations", "orders", "__dict__")

    def __init__(self, ngens: int, relations=None, *, orders: list[int] | None = None):
        self.ngens = int(ngens)
        if relations is None:
            relations = zeros(self.ngens, 0)
        self.relations = int_matrix(relations, self.ngens, 0)
        if self.relations.shape[0] != self.ngens:
            raise ValueError(
                f"relation matrix has {self.relations.shape[0]} rows, expected {self.ngens}"
            )
        self.orders = orders

    @classmethod
    def cyclic(cls, *orders: int) -> "FGAbelianGroup":
        """Direct sum of cyclic groups; an order of 0 means a copy of Z."""
        orders = [abs(int(d)) for d in orders]
        rel_cols = [i for i, d in enumerate(orders) if d]
        rel = zeros(len(orders), len(rel_cols))
        for k, i in enumerate(rel_cols):
            rel[i, k] = orders[i]
        return cls(len(orders), rel, orders=list(orders))

    @classmethod
    def free(cls, rank: int) -> "FGAbelianGroup":
        return cls.cyclic(*([0] * rank))

    @classmethod
    def zero(cls) -> "FGAbelianGroup":
        return cls.free(0)

    @cached_property
    def invariants(self) -> tuple[int, tuple[int, ...]]:
        """``(free_rank, torsion)`` with torsion coefficients d1 | d2 | ..."""
        if self.relations.shape[1] == 0:
            return self.ngens, ()
        _, D, _ = smith_normal_form(self.relations)
        diag = [D[i, i] for i in range(min(D.shape))]
        rank = sum(1 for d in diag if d)
        torsion = tuple(int(d) for d in diag if d > 1)
        return self.ngens - rank, torsion

    @property
    def free_rank(self) -> int:
        return self.invariants[0]

    @property
    def torsion(self) -> tuple[int, ...]:
        return self.invariants[1]

    def is_zero(self) -> bool:
        return self.invariants == (0, ())

    def is_isomorphic(self, other: "FGAbelianGroup") -> bool:
        return self.invariants == other.invariants

    def order(self) -> int | None:
        """Cardinality, or ``None`` for infinite groups."""
        r, t = self.invariants
        if r:
            return None
        out = 1
        for d in t:
            out *= d
        return out

    def reduce(self, m: np.ndarray) -> np.ndarray:
        """Reduce element columns modulo cyclic orders (diagonal form only)."""
        if self.orders is None:
            return m
        out = m.copy()
        for i, d in enumerate(self.orders):
            if d:
                for j in range(out.shape[1]):
                    out[i, j] = out[i, j] % d
        return out

    def contains_all(self, vectors: np.ndarray) -> bool:
        """True if every column of ``vectors`` is zero in the group."""
        vectors = int_matrix(vectors, self.ngens, 0)
        if vectors.shape[1] == 0 or not vectors.any():
            return True
        if self.orders is not None:
            for i, d in enumerate(self.orders):
                for j in range(vectors.shape[1]):
                    v = vectors[i, j]
                    if (v % d if d else v) != 0:
                        return False
            return True
        return _Solver(zeros(self.ngens, 0), self).solvable(vectors)

    def simplify(self) -> tuple["FGAbelianGroup", np.ndarray, np.ndarray]:
        """Diagonal-form copy together with ``(to_new, to_old)`` matrices."""
        orders, proj, lift = cokernel_of_relations(self.ngens, self.relations)
        return FGAbelianGroup.cyclic(*orders), proj, lift

    def __repr__(self) -> str:
        return f"FGAbelianGroup({describe(self.invariants)})"

    def __eq__(self, other):  # structural, not isomorphism
        if not isinstance(other, FGAbelianGroup):
            return NotImplemented
        return self.ngens == other.ngens and np.array_equal(self.relations, other.relations)

    def __hash__(self):
        return hash((self.ngens, self.relations.shape))


def describe(inv: tuple[int, tuple[int, ...]]) -> str:
    """Human-readable name such as ``Z^2 + Z/4``."""
    r, t = inv
    parts = []
    if r == 1:
        parts.append("Z")
    elif r > 1:
        parts.append(f"Z^{r}")
    parts.extend(f"Z/{d}" for d in t)
    return " + ".join(parts) if parts else "0"


class _Solver:
    """Solve ``A c = v`` modulo the relations of the target group."""

    def __init__(self, a: np.ndarray, target: FGAbelianGroup):
        self.nvars = a.shape[1]
        big = np.concatenate([int_matrix(a, target.ngens, 0), target.relations], axis=1)
        self.U, self.diag, self.V, _, self.rank = _snf_full(big)
        self.ncols = big.shape[1]

    def _solve_col(self, v):
        m = len(self.U)
        uv = [sum(self.U[i][j] * v[j] for j in range(m) if v[j]) for i in range(m)]
        y = [0] * self.ncols
        for i in range(m):
            if i < self.rank:
                q, r = divmod(uv[i], self.diag[i])
                if r:
                    return None
                y[i] = q
            elif uv[i]:
                return None
        return [sum(self.V[k][j] * y[j] for j in range(self.rank) if y[j]) for k in range(self.nvars)]

    def solvable(self, vectors: np.ndarray) -> bool:
        return all(self._solve_col(list(vectors[:, j])) is not None for j in range(vectors.shape[1]))

    def solve(self, vectors: np.ndarray) -> np.ndarray:
        out = zeros(self.nvars, vectors.shape[1])
        for j in range(vectors.shape[1]):
            c = self._solve_col(list(vectors[:, j]))
            if c is None:
                raise ValueError("vector is not in the image")
            out[:, j] = c
        return out


# ---------------------------------------------------------------------------
# homomorphisms

class GroupHom:
    """A homomorphism given by its matrix on the chosen generators."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FGAbelianGroup, target: FGAbelianGroup, matrix, check: bool = True):
        self.source = source
        self.target = target
        matrix = int_matrix(matrix, target.ngens, source.ngens)
        if matrix.shape != (target.ngens, source.ngens):
            raise ValueError(
                f"matrix shape {matrix.shape} does not match {target.ngens}x{source.ngens}"
            )
        self.matrix = target.reduce(matrix)
        if check and not target.contains_all(self.matrix @ source.relations if source.relations.shape[1] else zeros(target.ngens, 0)):
            raise IllDefinedMapError("matrix does not respect the source relations")

    @classmethod
    def identity(cls, g: FGAbelianGroup) -> "GroupHom":
        return cls(g, g, identity(g.ngens), check=False)

    @classmethod
    def zero(cls, s: FGAbelianGroup, t: FGAbelianGroup) -> "GroupHom":
        return cls(s, t, zeros(t.ngens, s.ngens), check=False)

    def __matmul__(self, other: "GroupHom") -> "GroupHom":
        return GroupHom(other.source, self.target, imatmul(self.matrix, other.matrix), check=False)

    def __add__(self, other: "GroupHom") -> "GroupHom":
        return GroupHom(self.source, self.target, self.matrix + other.matrix, check=False)

    def __sub__(self, other: "GroupHom") -> "GroupHom":
        return GroupHom(self.source, self.target, self.matrix - other.matrix, check=False)

    def __neg__(self) -> "GroupHom":
        return GroupHom(self.source, self.target, -self.matrix, check=False)

    def __mul__(self, k: int) -> "GroupHom":
        return GroupHom(self.source, self.target, self.matrix * int(k), check=False)

    __rmul__ = __mul__

    def equals(self, other: "GroupHom") -> bool:
        return self.target.contains_all(self.matrix - other.matrix)

    def is_zero(self) -> bool:
        return self.target.contains_all(self.matrix)

    def __pow__(self, k: int) -> "GroupHom":
        out = GroupHom.identity(self.source)
        for _ in range(k):
            out = self @ out
        return out

    def kernel(self) -> tuple[FGAbelianGroup, "GroupHom"]:
        return hom_kernel(self)

    def cokernel(self) -> tuple[FGAbelianGroup, "GroupHom"]:
        return hom_cokernel(self)

    def image(self) -> tuple[FGAbelianGroup, "GroupHom"]:
        return hom_image(self)

    def is_injective(self) -> bool:
        return self.kernel()[0].is_zero()

    def is_surjective(self) -> bool:
        return self.cokernel()[0].is_zero()

    def is_iso(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def rank(self) -> int:
        """Rank of the image (its free rank)."""
        return self.image()[0].free_rank

    def __repr__(self) -> str:
        return f"GroupHom({self.source!r} -> {self.target!r}, {self.matrix.tolist()})"


def hom_cokernel(f: GroupHom) -> tuple[FGAbelianGroup, GroupHom]:
    """Cokernel in diagonal form with its projection from ``f.target``."""
    t = f.target
    rel = np.concatenate([t.relations, f.matrix], axis=1)
    orders, proj, _ = cokernel_of_relations(t.ngens, rel)
    q = FGAbelianGroup.cyclic(*orders)
    return q, GroupHom(t, q, proj, check=False)


def _nullspace(m: np.ndarray) -> np.ndarray:
    """Integer basis of ``{x : m x = 0}`` as columns."""
    r, c = m.shape
    if c == 0:
        return zeros(0, 0)
    if r == 0:
        return identity(c)
    _, _, V, _, rank = _snf_full(m)
    out = zeros(c, c - rank)
    for j in range(rank, c):
        for i in range(c):
            out[i, j - rank] = V[i][j]
    return out


def subgroup_from_generators(g: FGAbelianGroup, gens: np.ndarray) -> tuple[FGAbelianGroup, GroupHom]:
    """The subgroup of ``g`` generated by columns of ``gens``, with inclusion."""
    gens = g.reduce(int_matrix(gens, g.ngens, 0))
    k = gens.shape[1]
    if k == 0:
        z = FGAbelianGroup.zero()
        return z, GroupHom(z, g, zeros(g.ngens, 0), check=False)
    big = np.concatenate([gens, g.relations], axis=1)
    null = _nullspace(big)
    rel = null[:k, :]
    orders, _, lift = cokernel_of_relations(k, rel)
    sub = FGAbelianGroup.cyclic(*orders)
    return sub, GroupHom(sub, g, gens @ lift, check=False)


def hom_kernel(f: GroupHom) -> tuple[FGAbelianGroup, GroupHom]:
    """Kernel in diagonal form with its inclusion into ``f.source``."""
    s, t = f.source, f.target
    big = np.concatenate([f.matrix, t.relations], axis=1)
    null = _nullspace(big)
    gens = null[: s.ngens, :]
    if s.relations.shape[1]:
        gens = np.concatenate([gens, s.relations], axis=1)
    return subgroup_from_generators(s, gens)


def hom_image(f: GroupHom) -> tuple[FGAbelianGroup, GroupHom]:
    """Image in diagonal form with its inclusion into ``f.target``."""
    return subgroup_from_generators(f.target, f.matrix)


def lift_through(incl: GroupHom, f: GroupHom) -> GroupHom:
    """Factor ``f`` through ``incl``: return ``g`` with ``incl @ g == f``."""
    sol = _Solver(incl.matrix, incl.target).solve(f.matrix)
    return GroupHom(f.source, incl.source, sol, check=False)


def direct_sum(groups: list[FGAbelianGroup]) -> FGAbelianGroup:
    n = sum(g.ngens for g in groups)
    r = sum(g.relations.shape[1] for g in groups)
    rel = zeros(n, r)
    i = j = 0
    for g in groups:
        rel[i:i + g.ngens, j:j + g.relations.shape[1]] = g.relations
        i += g.ngens
        j += g.relations.shape[1]
    orders = None
    if all(g.orders is not None for g in groups):
        orders = [d for g in groups for d in g.orders]
    return FGAbelianGroup(n, rel, orders=orders)


def tensor(a: FGAbelianGroup, b: FGAbelianGroup) -> FGAbelianGroup:
    """Presentation of ``a (x) b`` on generator pairs ``(i, j)`` -> ``i*b.ngens + j``."""
    rels = []
    if a.relations.shape[1]:
        rels.append(np.kron(a.relations, identity(b.ngens)))
    if b.relations.shape[1]:
        rels.append(np.kron(identity(a.ngens), b.relations))
    n = a.ngens * b.ngens
    rel = np.concatenate(rels, axis=1) if rels else zeros(n, 0)
    return FGAbelianGroup(n, rel)


# ---------------------------------------------------------------------------
# chain complexes

class ChainComplexZ:
    """Chain complex of f.g. abelian groups.

    ``groups[i]`` is C_{lo+i}; ``diffs[i]`` is d: C_{lo+i} -> C_{lo+i-1}
    (``diffs[0]`` should map to the zero group or be ``None``).
    """

    def __init__(self, groups: list[FGAbelianGroup], diffs: dict[int, GroupHom], lo: int = 0):
        self.groups = list(groups)
        self.lo = lo
        self.diffs = dict(diffs)

    def group(self, i: int) -> FGAbelianGroup:
        k = i - self.lo
        if 0 <= k < len(self.groups):
            return self.groups[k]
        return FGAbelianGroup.zero()

    def d(self, i: int) -> GroupHom:
        """Differential out of degree ``i``."""
        if i in self.diffs:
            return self.diffs[i]
        return GroupHom.zero(self.group(i), self.group(i - 1))

    def check(self, i: int) -> bool:
        return (self.d(i) @ self.d(i + 1)).is_zero()

    def homology(self, i: int) -> FGAbelianGroup:
        """ker d_i / im d_{i+1}, in diagonal form."""
        return homology(self, i)


def homology(c: ChainComplexZ, i: int) -> FGAbelianGroup:
    if not c.check(i):
        raise NotAComplexError(f"d_{i} o d_{i + 1} != 0")
    ker, inc = c.d(i).kernel()
    into = lift_through(inc, c.d(i + 1))
    h, _ = into.cokernel()
    return h
