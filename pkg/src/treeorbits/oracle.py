"""Numerical verification over prime fields.

``random_config`` draws a random point of the configuration variety over
F_p with a counter-based generator keyed by (seed, trial, vertex index),
so results are reproducible and independent of evaluation order.

``stabilizer_dim`` computes the exact rank of the linear system cutting
out the Lie stabilizer of a configuration: for each non-root vertex v
with basis matrix B_v, the conditions C_v X B_v = 0 where the rows of
C_v span the left annihilator of B_v.  The system rank equals the
dimension of the orbit through the point, so rank = dim of the variety
certifies a dense orbit (one witness suffices); anything less is
inconclusive, never a sparseness verdict.

``cross_ratio`` evaluates the projective invariant of four d-dimensional
subspaces in a pencil, reducing to four points on the projective line of
a two-dimensional quotient.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadRange, Degenerate, NotAPencil
from .modp import check_prime, left_annihilator, matmul_mod, rank_mod, rref_mod, solve_mod
from .products import FlagProduct, product_to_tree
from .trees import LabeledTree, dimension

DEFAULT_PRIME = 2**31 - 1
SECONDARY_PRIMES = (10007, 65537)


@dataclass(frozen=True)
class Configuration:
    """A point of the configuration variety over F_p: one basis per non-root vertex."""

    tree: LabeledTree
    p: int
    seed: int
    trial: int
    bases: dict[str, np.ndarray]


def _keyed_rng(seed: int, trial: int, vertex_index: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence([seed, trial, vertex_index]))
    )


def _as_tree(x) -> LabeledTree:
    return product_to_tree(x) if isinstance(x, FlagProduct) else x


def random_config(x, p: int = DEFAULT_PRIME, seed: int = 0, trial: int = 0) -> Configuration:
    """Draw a uniform-ish random point of the variety over F_p.

    Bases are drawn top-down: a vertex under the root gets a random full
    rank n x phi(v) matrix, and any deeper vertex gets B_parent R for a
    random full-rank phi(parent) x phi(v) matrix R, which keeps the
    containments exact.  Draws retry until full rank, continuing the
    keyed stream, so every configuration is a genuine variety point.
    """
    tree = _as_tree(x)
    if not isinstance(seed, int) or seed < 0:
        raise BadRange(f"seed must be a non-negative integer, got {seed!r}")
    if not isinstance(trial, int) or trial < 0:
        raise BadRange(f"trial must be a non-negative integer, got {trial!r}")
    check_prime(p)
    n = tree.ambient
    index = {v: i for i, v in enumerate(sorted(tree.labels))}
    order = sorted(
        (v for v in tree.labels if v != tree.root),
        key=lambda v: (tree.distance(v), v),
    )
    bases: dict[str, np.ndarray] = {}
    for v in order:
        k = tree.labels[v]
        up = tree.parent[v]
        rng = _keyed_rng(seed, trial, index[v])
        if up == tree.root:
            rows = n
            lift = None
        else:
            rows = tree.labels[up]
            lift = bases[up]
        while True:
            cand = rng.integers(0, p, size=(rows, k), dtype=np.int64)
            if rank_mod(cand, p) == k:
                break
        bases[v] = cand if lift is None else matmul_mod(lift, cand, p)
    return Configuration(tree, p, seed, trial, bases)


@dataclass(frozen=True)
class StabReport:
    """Exact stabilizer data at one configuration."""

    p: int
    seed: int
    trial: int
    variety_dim: int
    system_rank: int
    lie_stab_dim: int
    pgl_stab_dim: int
    certified_dense: bool

    def to_json_dict(self) -> dict:
        return {
            "prime": self.p,
            "seed": self.seed,
            "trial": self.trial,
            "variety_dim": self.variety_dim,
            "system_rank": self.system_rank,
            "lie_stab_dim": self.lie_stab_dim,
            "pgl_stab_dim": self.pgl_stab_dim,
            "certified_dense": self.certified_dense,
        }


def stabilizer_dim(config: Configuration) -> StabReport:
    """Rank of the stabilizer system at the configuration; rank = dim certifies density."""
    tree, p = config.tree, config.p
    n = tree.ambient
    blocks = []
    for v in sorted(config.bases):
        b = config.bases[v]
        c = left_annihilator(b, p)
        # condition C X B = 0: coefficient of X[i,j] in row (a,col) is C[a,i] B[j,col]
        block = np.einsum("ai,jb->abij", c, b).reshape(-1, n * n) % p
        blocks.append(block)
    system = np.vstack(blocks) if blocks else np.zeros((0, n * n), dtype=np.int64)
    rank = rank_mod(system, p)
    dim = dimension(tree)
    assert rank <= dim, "orbit tangent space cannot exceed the variety dimension"
    lie = n * n - rank
    return StabReport(
        p=p,
        seed=config.seed,
        trial=config.trial,
        variety_dim=dim,
        system_rank=rank,
        lie_stab_dim=lie,
        pgl_stab_dim=lie - 1,
        certified_dense=rank == dim,
    )


@dataclass(frozen=True)
class CertifyReport:
    """Outcome of repeated randomized density certification."""

    p: int
    trials: int
    seed: int
    variety_dim: int
    ranks: tuple[int, ...]
    certified_dense: bool
    status: str  # "DenseCertified" or "Inconclusive"

    def to_json_dict(self) -> dict:
        return {
            "prime": self.p,
            "trials": self.trials,
            "seed": self.seed,
            "variety_dim": self.variety_dim,
            "ranks": list(self.ranks),
            "system_rank": max(self.ranks),
            "certified_dense": self.certified_dense,
            "status": self.status,
        }


def certify_density(x, p: int = DEFAULT_PRIME, trials: int = 3, seed: int = 0) -> CertifyReport:
    """Try ``trials`` random configurations; any rank = dim witness certifies density.

    A failure to certify is reported as Inconclusive: a low rank at random
    points never proves sparseness.
    """
    if not isinstance(trials, int) or trials < 1:
        raise BadRange(f"trials must be a positive integer, got {trials!r}")
    tree = _as_tree(x)
    ranks = []
    certified = False
    for t in range(trials):
        config = random_config(tree, p=p, seed=seed, trial=t)
        report = stabilizer_dim(config)
        ranks.append(report.system_rank)
        if report.certified_dense:
            certified = True
    return CertifyReport(
        p=p,
        trials=trials,
        seed=seed,
        variety_dim=dimension(tree),
        ranks=tuple(ranks),
        certified_dense=certified,
        status="DenseCertified" if certified else "Inconclusive",
    )


def _column_span_dim(mat: np.ndarray, p: int) -> int:
    return rank_mod(mat, p)


def cross_ratio(zs, lower, upper, p: int) -> int:
    """Cross-ratio of four d-dimensional subspaces pinched between a flag pair.

    ``zs`` are four n x d matrices whose columns span the subspaces;
    ``lower`` is n x (d-1) and ``upper`` is n x (d+1) with
    lower < z_i < upper for all i.  The value is computed on the
    projective line of the quotient upper/lower after normalizing the
    first three subspaces to 0, infinity, 1:

        lambda = det(z4,z1) det(z3,z2) / (det(z4,z2) det(z3,z1)) mod p.

    Raises NotAPencil when the flag sandwich fails and Degenerate when
    the four subspaces are not pairwise distinct.
    """
    check_prime(p)
    if len(zs) != 4:
        raise BadRange(f"need exactly four subspaces, got {len(zs)}")
    zs = [np.atleast_2d(np.asarray(z, dtype=np.int64)) % p for z in zs]
    n, d = zs[0].shape
    if d < 1:
        raise BadRange("subspaces must have dimension at least 1")
    lower = np.asarray(lower, dtype=np.int64).reshape(n, -1) % p
    upper = np.asarray(upper, dtype=np.int64).reshape(n, -1) % p
    if lower.shape != (n, d - 1) or upper.shape != (n, d + 1):
        raise NotAPencil(
            f"flag pair must have shapes {(n, d - 1)} and {(n, d + 1)}, "
            f"got {lower.shape} and {upper.shape}"
        )
    if any(z.shape != (n, d) for z in zs):
        raise NotAPencil("the four subspaces must share the shape n x d")
    if _column_span_dim(lower, p) != d - 1:
        raise NotAPencil("lower flag is not (d-1)-dimensional")
    if _column_span_dim(upper, p) != d + 1:
        raise NotAPencil("upper flag is not (d+1)-dimensional")
    for i, z in enumerate(zs):
        if _column_span_dim(z, p) != d:
            raise NotAPencil(f"subspace {i + 1} is not {d}-dimensional")
        if _column_span_dim(np.hstack([lower, z]), p) != d:
            raise NotAPencil(f"subspace {i + 1} does not contain the lower flag")
        if _column_span_dim(np.hstack([z, upper]), p) != d + 1:
            raise NotAPencil(f"subspace {i + 1} is not inside the upper flag")
    # coordinates in the upper flag, then a 2-dim quotient by the lower flag
    lower_coords = solve_mod(upper, lower, p)
    quot = left_annihilator(lower_coords, p)  # 2 x (d+1), kernel exactly the lower flag
    points = []
    for z in zs:
        w = matmul_mod(quot, solve_mod(upper, z, p), p)
        red, rank, _ = rref_mod(w.T, p)
        assert rank == 1, "pencil member must map to a line in the quotient"
        points.append(red[0])
    def det2(u, v):
        return (int(u[0]) * int(v[1]) - int(u[1]) * int(v[0])) % p
    for i in range(4):
        for j in range(i + 1, 4):
            if det2(points[i], points[j]) == 0:
                raise Degenerate(f"subspaces {i + 1} and {j + 1} coincide")
    z1, z2, z3, z4 = points
    num = det2(z4, z1) * det2(z3, z2) % p
    den = det2(z4, z2) * det2(z3, z1) % p
    return num * pow(den, -1, p) % p
