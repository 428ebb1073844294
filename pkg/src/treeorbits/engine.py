"""Rewrite-and-rule engine deciding dense-orbit existence.

``decide`` takes a labeled tree or a flag product and repeatedly:

1. scans a catalog of terminal rules, each a proved theorem that settles
   the instance outright (Dense, Sparse, or TriviallySparse);
2. failing that, applies one density-preserving rewrite (``reduce_span``,
   ``reduce_half``, ``tree_to_product``) and loops.

One-sided terminal rules are also tried on the dual instance.  At the
fixpoint, rule R9 tries every single-vertex surjective deletion and
propagates sparseness back from the image (a surjective equivariant map
sends a dense orbit onto a dense orbit).  If nothing fires the verdict is
Unknown: the procedure never guesses.

Every verdict carries a trace of the rules and rewrites that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .classify import orbit_class, trivially_sparse
from .errors import IterationLimit
from .products import (
    FlagProduct,
    as_flag_product,
    dualize,
    product_to_tree,
    reduce_half,
    reduce_span,
    tree_to_product,
)
from .trees import LabeledTree, forget_vertex, to_dsl

DENSE = "Dense"
SPARSE = "Sparse"
TRIVIALLY_SPARSE = "TriviallySparse"
UNKNOWN = "Unknown"

Instance = LabeledTree | FlagProduct


@dataclass(frozen=True)
class Rule:
    rule_id: str
    kind: str  # "terminal" or "rewrite"
    summary: str
    citation: str


RULES: tuple[Rule, ...] = (
    Rule("R0", "terminal", "finite orbit class is dense",
         "an irreducible variety with finitely many orbits contains a dense one"),
    Rule("R1", "terminal", "dimension-count obstruction",
         "a subtree of dimension above phi(v)^2 - 1 leaves no room for a dense orbit"),
    Rule("R2", "terminal", "complementary pair in a triple self-product",
         "a triple self-product with k_i + k_j = n (i != j) carries a continuous invariant"),
    Rule("R3", "terminal", "two-step triple self-product",
         "F(k1,k2;n)^3 is sparse exactly when k1 + k2 = n"),
    Rule("R4", "terminal", "up to four Grassmannian factors",
         "m <= 4 Grassmannians are sparse exactly when m = 4 and k1+k2+k3+k4 = 2n"),
    Rule("R5", "terminal", "small sources",
         "if the source labels sum to at most the label at every vertex, the generic orbit is dense"),
    Rule("R6", "terminal", "doubling chain in a triple self-product",
         "2 k_r <= n and 2 k_i <= k_{i+1} for 2 <= i <= r-1 force a dense orbit"),
    Rule("R7", "terminal", "one large Grassmannian among small ones",
         "sum_{i<m} k_i <= n and k_m <= n - sum_{i<m} k_i + min_{i<m} k_i force a dense orbit"),
    Rule("R8", "terminal", "five Grassmannian factors",
         "factors (d1,...,d4, n-d5; n) with d5 >= d4 >= ... >= d1 and d1+...+d4 <= n are dense iff d1+d2+d3+d4 != 2 d5"),
    Rule("R9", "terminal", "sparse forgetful image",
         "a surjective forgetful map sends a dense orbit onto a dense orbit"),
    Rule("as-product", "rewrite", "read chain union as a product",
         "chains joined only at the root index a product of flag varieties"),
    Rule("dualize-normalize", "rewrite", "pass to the dual configurations",
         "sending each k to n - k identifies the orbit structures of dual configurations"),
    Rule("reduce_span", "rewrite", "cut one factor to the span of the rest",
         "a generic configuration spans a subspace of dimension n' = sum of the other top dimensions; cutting to it preserves density both ways"),
    Rule("reduce_half", "rewrite", "halve a triple self-product with n = 2 k_r",
         "when n = 2 k_r the triple self-product is dense exactly when the prefix triple inside the top subspace is"),
    Rule("tree_to_product", "rewrite", "reduce a three-leaf tree at its junction",
         "a three-leaf tree is dense exactly when the product of its chains at the deepest junction is"),
)

_RULES_BY_ID = {r.rule_id: r for r in RULES}


@dataclass(frozen=True)
class Step:
    """One trace entry: a rule firing or a rewrite application."""

    rule_id: str
    citation: str
    before: str
    after: str
    note: str = ""
    subtrace: tuple["Step", ...] = ()

    def to_json_dict(self) -> dict:
        d = {
            "rule_id": self.rule_id,
            "citation": self.citation,
            "before": self.before,
            "after": self.after,
        }
        if self.note:
            d["note"] = self.note
        if self.subtrace:
            d["subtrace"] = [s.to_json_dict() for s in self.subtrace]
        return d


@dataclass(frozen=True)
class Verdict:
    """Decision outcome with the derivation that produced it."""

    status: str
    trace: tuple[Step, ...]
    input: str
    final: str

    def to_json_dict(self) -> dict:
        return {
            "status": self.status,
            "input": self.input,
            "final": self.final,
            "trace": [s.to_json_dict() for s in self.trace],
        }


def display(inst: Instance) -> str:
    return to_dsl(inst) if isinstance(inst, LabeledTree) else inst.spec_string()


def tree_form(inst: Instance) -> LabeledTree:
    return inst if isinstance(inst, LabeledTree) else product_to_tree(inst)


def _step(rule_id: str, before: Instance, after: Instance, note: str = "",
          subtrace: tuple[Step, ...] = ()) -> Step:
    return Step(rule_id, _RULES_BY_ID[rule_id].citation,
                display(before), display(after), note, subtrace)


def _easy_dense(tree: LabeledTree) -> bool:
    lab = tree.labels
    return all(
        sum(lab[c] for c in tree.children[v]) <= lab[v] for v in tree.labels
    )


def _match_r2(p: FlagProduct):
    if p.num_factors != 3 or len(set(p.factors)) != 1:
        return None
    k = p.factors[0]
    for i in range(len(k)):
        for j in range(i + 1, len(k)):
            if k[i] + k[j] == p.ambient:
                return SPARSE, f"k_{i + 1} + k_{j + 1} = {k[i]} + {k[j]} = n"
    return None


def _match_r3(p: FlagProduct):
    if p.num_factors != 3 or len(set(p.factors)) != 1 or len(p.factors[0]) != 2:
        return None
    k1, k2 = p.factors[0]
    if k1 + k2 == p.ambient:
        return SPARSE, f"k1 + k2 = {k1} + {k2} = n"
    return DENSE, f"k1 + k2 = {k1 + k2} != {p.ambient} = n"


def _match_r4(p: FlagProduct):
    if not all(len(f) == 1 for f in p.factors) or p.num_factors > 4:
        return None
    ks = [f[0] for f in p.factors]
    if len(ks) == 4 and sum(ks) == 2 * p.ambient:
        return SPARSE, f"four Grassmannians with {'+'.join(map(str, ks))} = 2n"
    return DENSE, f"{len(ks)} Grassmannian factors, sum {sum(ks)} != 2n"


def _match_r5(inst: Instance):
    if _easy_dense(tree_form(inst)):
        return DENSE, "source labels sum to at most the label at every vertex"
    return None


def _match_r6(p: FlagProduct):
    if p.num_factors != 3 or len(set(p.factors)) != 1:
        return None
    k = p.factors[0]
    if 2 * k[-1] <= p.ambient and all(2 * k[i] <= k[i + 1] for i in range(1, len(k) - 1)):
        return DENSE, f"2 k_r = {2 * k[-1]} <= n and the doubling chain holds"
    return None


def _match_r7(p: FlagProduct):
    if not p.factors or not all(len(f) == 1 for f in p.factors):
        return None
    ks = sorted(f[0] for f in p.factors)
    if len(ks) == 1:
        return DENSE, "a single Grassmannian is homogeneous"
    rest, kmax = ks[:-1], ks[-1]
    if sum(rest) <= p.ambient and kmax <= p.ambient - sum(rest) + rest[0]:
        return DENSE, f"sum of the small Grassmannians is {sum(rest)} <= n and k_m = {kmax} fits"
    return None


def _match_r8(p: FlagProduct):
    if p.num_factors != 5 or not all(len(f) == 1 for f in p.factors):
        return None
    n = p.ambient
    ks = [f[0] for f in p.factors]
    for idx in range(5):
        d5 = n - ks[idx]
        rest = sorted(ks[:idx] + ks[idx + 1 :])
        if d5 >= rest[-1] and sum(rest) <= n:
            tag = f"(d1..d4) = {tuple(rest)}, d5 = {d5}"
            if sum(rest) == 2 * d5:
                return SPARSE, f"{tag}: d1+d2+d3+d4 = 2 d5"
            return DENSE, f"{tag}: d1+d2+d3+d4 = {sum(rest)} != {2 * d5} = 2 d5"
    return None


def _match_r0(inst: Instance):
    oc = orbit_class(tree_form(inst))
    if oc.finite:
        return DENSE, f"orbit class {oc.kind}" + (f" (case {oc.case_label})" if oc.case_label else "")
    return None


# scan order: cheap structural rules first, catalog verdicts all being theorems
# the order only shapes the trace, never the verdict
_TERMINAL_ORDER = ("R1", "R2", "R3", "R5", "R6", "R7", "R8", "R4", "R0")

# rules whose hypothesis is not invariant under dualizing, so the dual is tried too
_ONE_SIDED = {"R1", "R5", "R6", "R7", "R8"}

_PRODUCT_ONLY = {"R2", "R3", "R4", "R6", "R7", "R8"}

_MATCHERS = {
    "R2": _match_r2,
    "R3": _match_r3,
    "R4": _match_r4,
    "R5": _match_r5,
    "R6": _match_r6,
    "R7": _match_r7,
    "R8": _match_r8,
    "R0": _match_r0,
}


def _match_r1(inst: Instance, entry_level: bool):
    ts = trivially_sparse(tree_form(inst))
    if ts.violated:
        status = TRIVIALLY_SPARSE if entry_level else SPARSE
        return status, (
            f"subtree at {ts.vertex} has dimension {ts.lhs} > {ts.rhs} = phi^2 - 1"
        )
    return None


def _terminal(inst: Instance, trace: list[Step], entry_level: bool) -> Verdict | None:
    dual = dualize(inst) if isinstance(inst, FlagProduct) else None
    for rid in _TERMINAL_ORDER:
        if rid == "R1":
            candidates = [(inst, False)]
            if dual is not None:
                candidates.append((dual, True))
            for cand, used_dual in candidates:
                hit = _match_r1(cand, entry_level and not used_dual)
                if hit:
                    return _conclude(rid, cand, inst, used_dual, hit, trace)
            continue
        if rid in _PRODUCT_ONLY and not isinstance(inst, FlagProduct):
            continue
        matcher = _MATCHERS[rid]
        hit = matcher(inst)
        if hit:
            return _conclude(rid, inst, inst, False, hit, trace)
        if rid in _ONE_SIDED and dual is not None:
            hit = matcher(dual)
            if hit:
                return _conclude(rid, dual, inst, True, hit, trace)
    return None


def _conclude(rid, matched, original, used_dual, hit, trace) -> "Verdict":
    status, note = hit
    if used_dual:
        trace.append(_step("dualize-normalize", original, matched,
                           note="rule hypothesis holds on the dual"))
    trace.append(_step(rid, matched, matched, note=note))
    return Verdict(status, tuple(trace), "", "")  # input/final filled by caller


def _dual_norm(p: FlagProduct, trace: list[Step]) -> FlagProduct:
    q = dualize(p)
    if q.factors < p.factors:
        trace.append(_step("dualize-normalize", p, q, note="dual is lexicographically smaller"))
        return q
    return p


def _rewrite_once(inst: Instance):
    if isinstance(inst, LabeledTree):
        p = tree_to_product(inst)
        return ("tree_to_product", p) if p is not None else None
    p = reduce_span(inst)
    if p is not None:
        return "reduce_span", p
    p = reduce_half(inst)
    if p is not None:
        return "reduce_half", p
    return None


def decide(x: Instance, depth: int = 1) -> Verdict:
    """Decide density for a tree or flag product; Unknown when no rule fires.

    ``depth`` bounds the nesting of rule R9: each surjective single-vertex
    deletion is decided recursively with depth - 1, and depth 0 disables
    R9 entirely.
    """
    started = display(x)
    v = _decide(x, depth)
    return Verdict(v.status, v.trace, started, v.final)


def _decide(x: Instance, depth: int) -> Verdict:
    trace: list[Step] = []
    inst: Instance = x
    hit = _match_r1(inst, entry_level=True)
    if hit:
        status, note = hit
        trace.append(_step("R1", inst, inst, note=note))
        return Verdict(status, tuple(trace), display(x), display(inst))
    if isinstance(inst, LabeledTree):
        p = as_flag_product(inst)
        if p is not None:
            trace.append(_step("as-product", inst, p))
            inst = p
    if isinstance(inst, FlagProduct):
        inst = _dual_norm(inst, trace)
    for _ in range(inst_ambient(inst) + 16):
        verdict = _terminal(inst, trace, entry_level=False)
        if verdict is not None:
            return Verdict(verdict.status, verdict.trace, display(x), display(inst))
        nxt = _rewrite_once(inst)
        if nxt is None:
            break
        rule_id, new_inst = nxt
        trace.append(_step(rule_id, inst, new_inst))
        inst = new_inst
        if isinstance(inst, FlagProduct):
            inst = _dual_norm(inst, trace)
    else:
        raise IterationLimit(f"rewriting did not reach a fixpoint from {display(x)}")
    if depth >= 1:
        verdict = _r9(inst, depth, trace)
        if verdict is not None:
            return Verdict(verdict.status, verdict.trace, display(x), display(inst))
    return Verdict(UNKNOWN, tuple(trace), display(x), display(inst))


def inst_ambient(inst: Instance) -> int:
    return inst.ambient


def _r9(inst: Instance, depth: int, trace: list[Step]) -> Verdict | None:
    tree = tree_form(inst)
    for v in sorted(tree.labels):
        if v == tree.root:
            continue
        image, surjective = forget_vertex(tree, v)
        if not surjective:
            continue
        sub = _decide(image, depth - 1)
        if sub.status in (SPARSE, TRIVIALLY_SPARSE):
            trace.append(
                _step(
                    "R9",
                    inst,
                    image,
                    note=f"forgetting vertex {v} is surjective and the image is sparse",
                    subtrace=sub.trace,
                )
            )
            return Verdict(SPARSE, tuple(trace), "", "")
    return None
