"""Second cohomology of a Jordan algebra acting on itself.

A symmetric bilinear map h : J x J -> J is a 2-cocycle iff the split null
extension J + M (M a copy of J with M*M = 0, products
(x,u)(y,v) = (xy, xv + uy + h(x,y))) again satisfies the linearized Jordan
identity.  Since the h = 0 extension is Jordan and the identity's defect is
linear in h, the cocycles form the kernel of a linear system assembled over
basis quadruples.  Coboundaries are the maps
h_mu(x, y) = mu(x)y + x mu(y) - mu(xy) for linear mu, and
h2 = dim Z2 - dim B2 counts extensions up to equivalence.

The assembly runs on integer-scaled structure constants: every defect term
carries exactly two structure-constant factors, so clearing denominators
rescales all rows uniformly and leaves the kernel unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import Algebra, AlgebraError, is_jordan
from .invariants import NonJordanError
from .ratlin import (
    Matrix,
    Subspace,
    Vector,
    int_rows_rank,
    kernel,
    unit_vec,
    vec,
    zero_vec,
)

SymGrid = tuple[tuple[Vector, ...], ...]


@dataclass(frozen=True)
class CocycleSpace:
    z2_dim: int
    b2_dim: int
    h2_dim: int

    def __post_init__(self):
        if self.h2_dim != self.z2_dim - self.b2_dim or self.h2_dim < 0:
            raise AlgebraError("inconsistent cocycle dimensions")


def grid_from_function(a: Algebra, fn) -> SymGrid:
    n = a.dim
    return tuple(tuple(vec(fn(i, j)) for j in range(n)) for i in range(n))


def zero_grid(a: Algebra) -> SymGrid:
    return grid_from_function(a, lambda i, j: zero_vec(a.dim))


def null_extension(a: Algebra, h: SymGrid) -> Algebra:
    """Algebra on J + M realizing the symmetric bilinear map h."""
    n = a.dim
    if len(h) != n or any(len(row) != n or any(len(v) != n for v in row) for row in h):
        raise AlgebraError("cocycle grid must be n x n with n-vectors")
    for i in range(n):
        for j in range(i + 1, n):
            if tuple(h[i][j]) != tuple(h[j][i]):
                raise AlgebraError("cocycle grid must be symmetric")
    labels = a.labels + tuple(l + "'" for l in a.labels)
    zeros = zero_vec(n)
    table = []
    for i in range(2 * n):
        row = []
        for j in range(2 * n):
            if i < n and j < n:
                row.append(tuple(a.table[i][j]) + tuple(h[i][j]))
            elif i < n <= j:
                row.append(zeros + tuple(a.table[i][j - n]))
            elif j < n <= i:
                row.append(zeros + tuple(a.table[i - n][j]))
            else:
                row.append(zeros + zeros)
        table.append(tuple(row))
    return Algebra(labels, tuple(table))


def coboundary(a: Algebra, mu: Matrix) -> SymGrid:
    """h_mu(x, y) = mu(x)y + x mu(y) - mu(xy) on basis pairs."""
    if mu.rows != a.dim or mu.cols != a.dim:
        raise AlgebraError("coboundary map has wrong shape")
    n = a.dim
    cols = [mu.apply(unit_vec(n, j)) for j in range(n)]

    def entry(i, j):
        t = a.mul(cols[i], a.basis_vector(j))
        t = tuple(x + y for x, y in zip(t, a.mul(a.basis_vector(i), cols[j])))
        return tuple(x - y for x, y in zip(t, mu.apply(a.table[i][j])))

    return grid_from_function(a, entry)


# ---------------------------------------------------------------------------
# linear system for the cocycle condition

def _int_structure(a: Algebra) -> tuple[int, tuple[tuple[tuple[tuple[int, int], ...], ...], ...]]:
    """Denominator-cleared sparse structure constants: srow[i][j] = ((k, c), ...)."""
    return a._int_structure


def _pair_index(n: int) -> dict[tuple[int, int], int]:
    pairs = {}
    for p in range(n):
        for q in range(p, n):
            pairs[(p, q)] = len(pairs)
    return pairs


class _SymbolicPair:
    """Extension element (const, sym): integer J-part plus M-part linear in h."""

    __slots__ = ("const", "sym")

    def __init__(self, const, sym):
        self.const = const  # list[int], length n
        self.sym = sym  # list[dict[int, int]], length n


def _assemble_cocycle_rows(a: Algebra) -> tuple[int, list[tuple[int, ...]]]:
    """Unknown count and integer rows of the cocycle condition."""
    n = a.dim
    _, srows = _int_structure(a)
    pairs = _pair_index(n)
    nunk = len(pairs) * n

    def unknown(p: int, q: int, k: int) -> int:
        return pairs[(min(p, q), max(p, q))] * n + k

    def mul_int(u: Sequence[int], v: Sequence[int]) -> list[int]:
        out = [0] * n
        for i, x in enumerate(u):
            if x:
                row = srows[i]
                for j, y in enumerate(v):
                    if y:
                        xy = x * y
                        for k, c in row[j]:
                            out[k] += xy * c
        return out

    def mod_act(u: Sequence[int], sym: list[dict[int, int]]) -> list[dict[int, int]]:
        out: list[dict[int, int]] = [dict() for _ in range(n)]
        for i, x in enumerate(u):
            if x:
                row = srows[i]
                for j, form in enumerate(sym):
                    if form:
                        for k, c in row[j]:
                            xc = x * c
                            ok = out[k]
                            get = ok.get
                            for unk, coef in form.items():
                                ok[unk] = get(unk, 0) + xc * coef
        return out

    pair_base = [[unknown(p, q, 0) for q in range(n)] for p in range(n)]

    def h_of(u: Sequence[int], v: Sequence[int]) -> list[dict[int, int]]:
        out: list[dict[int, int]] = [dict() for _ in range(n)]
        for p, x in enumerate(u):
            if x:
                bases = pair_base[p]
                for q, y in enumerate(v):
                    if y:
                        xy = x * y
                        base = bases[q]
                        for k in range(n):
                            ok = out[k]
                            unk = base + k
                            ok[unk] = ok.get(unk, 0) + xy
        return out

    def add_sym(s1, s2):
        out = []
        for f1, f2 in zip(s1, s2):
            f = dict(f1)
            for unk, coef in f2.items():
                f[unk] = f.get(unk, 0) + coef
            out.append(f)
        return out

    def sub_sym(s1, s2):
        out = []
        for f1, f2 in zip(s1, s2):
            f = dict(f1)
            for unk, coef in f2.items():
                f[unk] = f.get(unk, 0) - coef
            out.append(f)
        return out

    def prod(A: _SymbolicPair, B: _SymbolicPair) -> _SymbolicPair:
        sym = add_sym(mod_act(A.const, B.sym), mod_act(B.const, A.sym))
        sym = add_sym(sym, h_of(A.const, B.const))
        return _SymbolicPair(mul_int(A.const, B.const), sym)

    basis = [
        _SymbolicPair([1 if t == i else 0 for t in range(n)], [dict() for _ in range(n)])
        for i in range(n)
    ]
    # products of two basis elements and of a basis element with such a
    # product recur across the quadruple scan; memoize both layers
    pair_prod: dict[tuple[int, int], _SymbolicPair] = {}
    triple_prod: dict[tuple[int, int, int], _SymbolicPair] = {}

    def bb(i: int, j: int) -> _SymbolicPair:
        key = (min(i, j), max(i, j))
        if key not in pair_prod:
            pair_prod[key] = prod(basis[key[0]], basis[key[1]])
        return pair_prod[key]

    def b_bb(y: int, i: int, j: int) -> _SymbolicPair:
        key = (y, min(i, j), max(i, j))
        if key not in triple_prod:
            triple_prod[key] = prod(basis[y], bb(i, j))
        return triple_prod[key]

    def assoc_defect(x: int, y: int, i: int, j: int) -> _SymbolicPair:
        # associator of (basis x, basis y, basis_i * basis_j)
        left = prod(bb(x, y), bb(i, j))
        right = prod(basis[x], b_bb(y, i, j))
        return _SymbolicPair(
            [p - q for p, q in zip(left.const, right.const)],
            sub_sym(left.sym, right.sym),
        )

    rows: set[tuple[int, ...]] = set()
    for x in range(n):
        for z in range(x, n):
            for w in range(z, n):
                for y in range(n):
                    t1 = assoc_defect(x, y, z, w)
                    t2 = assoc_defect(w, y, z, x)
                    t3 = assoc_defect(z, y, x, w)
                    for k in range(n):
                        form: dict[int, int] = {}
                        for t in (t1, t2, t3):
                            for unk, coef in t.sym[k].items():
                                form[unk] = form.get(unk, 0) + coef
                        row = [0] * nunk
                        nonzero = False
                        for unk, coef in form.items():
                            if coef:
                                row[unk] = coef
                                nonzero = True
                        if nonzero:
                            rows.add(tuple(row))
    return nunk, list(rows)


def grid_to_vec(a: Algebra, h: SymGrid) -> Vector:
    """Flatten a symmetric grid to coordinates over pairs p <= q."""
    n = a.dim
    out = []
    for p in range(n):
        for q in range(p, n):
            out.extend(h[p][q])
    return tuple(out)


def vec_to_grid(a: Algebra, v: Sequence[Fraction]) -> SymGrid:
    n = a.dim
    grid = [[None] * n for _ in range(n)]
    pos = 0
    for p in range(n):
        for q in range(p, n):
            entry = tuple(v[pos : pos + n])
            grid[p][q] = entry
            grid[q][p] = entry
            pos += n
    return tuple(tuple(row) for row in grid)


def cocycle_subspaces(a: Algebra) -> tuple[Subspace, Subspace]:
    """(Z2, B2) as subspaces of the flattened symmetric-map coordinates."""
    if not is_jordan(a):
        raise NonJordanError("cocycles are only computed for Jordan algebras")
    nunk, rows = _assemble_cocycle_rows(a)
    if rows:
        z2 = kernel(Matrix.from_rows([[Fraction(x) for x in r] for r in rows]))
    else:
        z2 = Subspace.full(nunk)
    n = a.dim
    gens = []
    for r in range(n):
        for s in range(n):
            mu = Matrix.from_rows(
                [[1 if (i, j) == (r, s) else 0 for j in range(n)] for i in range(n)]
            )
            gens.append(grid_to_vec(a, coboundary(a, mu)))
    b2 = Subspace.span(nunk, gens)
    return z2, b2


def _coboundary_int_rows(a: Algebra) -> list[list[int]]:
    """Flattened coboundaries of the unit maps mu = E_rs, on integer-scaled
    structure constants (uniform rescaling, rank unchanged)."""
    n = a.dim
    _, srows = _int_structure(a)
    dense = [
        [_dense_int(srows[i][j], n) for j in range(n)] for i in range(n)
    ]
    rows = []
    for r in range(n):
        for s in range(n):
            row: list[int] = []
            for i in range(n):
                for j in range(i, n):
                    v = [0] * n
                    if i == s:
                        for k, x in enumerate(dense[r][j]):
                            v[k] += x
                    if j == s:
                        for k, x in enumerate(dense[i][r]):
                            v[k] += x
                    v[r] -= dense[i][j][s]
                    row.extend(v)
            rows.append(row)
    return rows


def _dense_int(sparse_entry, n: int) -> list[int]:
    out = [0] * n
    for k, x in sparse_entry:
        out[k] = x
    return out


def cocycle_space(a: Algebra) -> CocycleSpace:
    """Dimensions of 2-cocycles, 2-coboundaries and their quotient."""
    if not is_jordan(a):
        raise NonJordanError("cocycles are only computed for Jordan algebras")
    nunk, rows = _assemble_cocycle_rows(a)
    z2 = nunk - int_rows_rank(rows, nunk)
    b2 = int_rows_rank(_coboundary_int_rows(a), nunk)
    return CocycleSpace(z2, b2, z2 - b2)
