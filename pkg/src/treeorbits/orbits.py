"""Exhaustive orbit enumeration over tiny finite fields.

Configurations over F_q (q in {2, 3, 4, 5}) are enumerated as tuples of
canonical subspaces (reduced row echelon bases), one per non-root vertex,
respecting the containments.  The group acts through three generating
matrices of GL(n, q) (a cycle, a transvection, and a primitive scalar in
one slot), each inducing a permutation of the canonical subspaces per
dimension; a breadth-first closure then counts orbits.

The projected point count (a product of Gaussian binomials, one per
edge) is checked against the cap before anything is enumerated.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .errors import BadRange, CapExceeded, UnsupportedField
from .products import FlagProduct, product_to_tree
from .trees import LabeledTree

DEFAULT_CAP = 200_000

_GF4_MUL = (
    (0, 0, 0, 0),
    (0, 1, 2, 3),
    (0, 2, 3, 1),
    (0, 3, 1, 2),
)


class GF:
    """Field of order q in {2, 3, 4, 5} with elements 0..q-1."""

    def __init__(self, q: int):
        if q not in (2, 3, 4, 5):
            raise UnsupportedField(f"field order must be one of 2, 3, 4, 5, got {q!r}")
        self.q = q
        if q == 4:
            # F_2[x]/(x^2 + x + 1); addition is xor
            self.add = lambda a, b: a ^ b
            self.neg = lambda a: a
            self.mul = lambda a, b: _GF4_MUL[a][b]
        else:
            self.add = lambda a, b: (a + b) % q
            self.neg = lambda a: (-a) % q
            self.mul = lambda a, b: (a * b) % q
        self.inv_table = {a: next(b for b in range(1, q) if self.mul(a, b) == 1)
                          for a in range(1, q)}
        self.primitive = next(
            a for a in range(2, q)
            if len({self._pow(a, i) for i in range(1, q)}) == q - 1
        ) if q > 2 else 1

    def _pow(self, a: int, e: int) -> int:
        out = 1
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def inv(self, a: int) -> int:
        return self.inv_table[a]


def _rref(rows: list[list[int]], gf: GF) -> tuple[tuple[int, ...], ...]:
    """Canonical reduced row echelon form over gf; zero rows dropped."""
    rows = [list(r) for r in rows]
    cols = len(rows[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = gf.inv(rows[r][c])
        rows[r] = [gf.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [gf.add(x, gf.neg(gf.mul(f, y))) for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return tuple(tuple(row) for row in rows[:r])


def _matmul(a, b, gf: GF) -> list[list[int]]:
    out = []
    for row in a:
        acc = [0] * len(b[0])
        for x, brow in zip(row, b):
            if x:
                acc = [gf.add(v, gf.mul(x, w)) for v, w in zip(acc, brow)]
        out.append(acc)
    return out


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _subspaces(n: int, d: int, gf: GF) -> list[tuple[tuple[int, ...], ...]]:
    """All d-dimensional subspaces of F_q^n as canonical echelon bases."""
    out = []
    for pivots in combinations(range(n), d):
        free = [
            [c for c in range(p + 1, n) if c not in pivots]
            for p in pivots
        ]
        slots = [(i, c) for i, cs in enumerate(free) for c in cs]
        for values in product(range(gf.q), repeat=len(slots)):
            mat = [[0] * n for _ in range(d)]
            for i, p in enumerate(pivots):
                mat[i][p] = 1
            for (i, c), val in zip(slots, values):
                mat[i][c] = val
            out.append(tuple(tuple(row) for row in mat))
    return out


def _generators(n: int, gf: GF) -> list[list[list[int]]]:
    """Matrices generating GL(n, q) (acting by right multiplication on row spans)."""
    gens = []
    if n >= 2:
        cycle = [[0] * n for _ in range(n)]
        for i in range(n):
            cycle[i][(i + 1) % n] = 1
        transvection = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        transvection[0][1] = 1
        gens += [cycle, transvection]
    if gf.q > 2:
        scalar = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        scalar[0][0] = gf.primitive
        gens.append(scalar)
    return gens


@dataclass(frozen=True)
class OrbitReport:
    """Full orbit census of the configuration variety over F_q."""

    q: int
    cap: int
    point_count: int
    orbit_count: int
    limits_hit: bool = False

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "cap": self.cap,
            "point_count": self.point_count,
            "orbit_count": self.orbit_count,
            "limits_hit": self.limits_hit,
        }


def projected_point_count(x, q: int) -> int:
    """Exact number of F_q points: product of one Gaussian binomial per edge."""
    tree = product_to_tree(x) if isinstance(x, FlagProduct) else x
    GF(q)  # validates q
    total = 1
    for s, t in tree.edges:
        total *= gaussian_binomial(tree.labels[t], tree.labels[s], q)
    return total


def enumerate_orbits(x, q: int = 2, cap: int = DEFAULT_CAP) -> OrbitReport:
    """Count GL(n, q) orbits on the F_q points of the configuration variety.

    Raises CapExceeded (with the exact projected point count) when the
    enumeration would exceed ``cap`` points, before any work is done.
    """
    if not isinstance(cap, int) or cap < 1:
        raise BadRange(f"cap must be a positive integer, got {cap!r}")
    tree = product_to_tree(x) if isinstance(x, FlagProduct) else x
    gf = GF(q)
    n = tree.ambient
    projected = projected_point_count(tree, q)
    if projected > cap:
        raise CapExceeded(projected, cap)
    dims = sorted({tree.labels[v] for v in tree.labels if v != tree.root})
    for d in dims:
        if gaussian_binomial(n, d, q) > cap:
            raise CapExceeded(gaussian_binomial(n, d, q), cap)
    tables = {d: _subspaces(n, d, gf) for d in dims}
    index = {d: {sub: i for i, sub in enumerate(tables[d])} for d in dims}

    order = sorted(
        (v for v in tree.labels if v != tree.root),
        key=lambda v: (tree.distance(v), v),
    )
    pos = {v: i for i, v in enumerate(order)}

    # children_of[(dt, ds)][parent index] = indices of ds-subspaces inside it
    pairs = {
        (tree.labels[t], tree.labels[s])
        for s, t in tree.edges
        if t != tree.root
    }
    children_of = {}
    for dt, ds in pairs:
        locals_ = _subspaces(dt, ds, gf)
        lists = []
        for parent in tables[dt]:
            lists.append(
                [index[ds][_rref(_matmul(loc, parent, gf), gf)] for loc in locals_]
            )
        children_of[(dt, ds)] = lists

    points: list[tuple[int, ...]] = []
    assign = [0] * len(order)

    def expand(i: int) -> None:
        if i == len(order):
            points.append(tuple(assign))
            return
        v = order[i]
        up = tree.parent[v]
        if up == tree.root:
            choices = range(len(tables[tree.labels[v]]))
        else:
            choices = children_of[(tree.labels[up], tree.labels[v])][assign[pos[up]]]
        for c in choices:
            assign[i] = c
            expand(i + 1)

    expand(0)
    assert len(points) == projected, "point census must match the binomial product"

    perms = []
    for g in _generators(n, gf):
        perm = {
            d: [index[d][_rref(_matmul(list(sub), g, gf), gf)] for sub in tables[d]]
            for d in dims
        }
        perms.append(perm)
    vdim = [tree.labels[v] for v in order]

    ids = {pt: i for i, pt in enumerate(points)}
    seen = [False] * len(points)
    orbit_count = 0
    for start in range(len(points)):
        if seen[start]:
            continue
        orbit_count += 1
        seen[start] = True
        frontier = [points[start]]
        while frontier:
            nxt = []
            for pt in frontier:
                for perm in perms:
                    img = tuple(perm[vdim[i]][c] for i, c in enumerate(pt))
                    j = ids[img]
                    if not seen[j]:
                        seen[j] = True
                        nxt.append(img)
            frontier = nxt
    return OrbitReport(q=q, cap=cap, point_count=len(points), orbit_count=orbit_count)
