"""Command line front end.

Verbs: ``dim``, ``classify``, ``decide``, ``certify``, ``orbits``,
``crossratio``.  Instances come from a positional argument (auto
detected) or one of ``--tree``, ``--tree-file``, ``--product``.

Exit codes: 0 for any computed answer (including Unknown verdicts and
Inconclusive certificates), 2 for parse or validation problems, 3 when a
point cap stops an enumeration, 4 for internal errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import engine
from .classify import orbit_class, trivially_sparse
from .errors import CapExceeded, Error, IterationLimit, ParseError
from .oracle import DEFAULT_PRIME, certify_density, cross_ratio
from .orbits import DEFAULT_CAP, enumerate_orbits
from .parsing import parse_instance, parse_product, parse_tree_spec
from .products import FlagProduct, product_to_tree
from .trees import LabeledTree, dimension, to_dsl


def _dump(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


def _add_instance_args(sub: argparse.ArgumentParser, required: bool = True) -> None:
    sub.add_argument("input", nargs="?", help="tree (chains or JSON) or product text")
    sub.add_argument("--tree", help="tree text, chain notation or JSON")
    sub.add_argument("--tree-file", help="file containing tree text")
    sub.add_argument("--product", help="product text, like F(1,2;4)^3")


def _instance(args) -> LabeledTree | FlagProduct:
    given = []
    if args.input is not None:
        given.append(("input", args.input))
    if args.tree is not None:
        given.append(("tree", args.tree))
    if getattr(args, "tree_file", None) is not None:
        try:
            with open(args.tree_file) as fh:
                given.append(("tree", fh.read()))
        except OSError as e:
            raise ParseError(f"cannot read {args.tree_file}: {e}") from None
    if args.product is not None:
        given.append(("product", args.product))
    if len(given) != 1:
        raise ParseError("provide exactly one of: positional input, --tree, --tree-file, --product")
    kind, text = given[0]
    if kind == "tree":
        return parse_tree_spec(text)
    if kind == "product":
        return parse_product(text)
    return parse_instance(text)


def _as_tree(inst) -> LabeledTree:
    return product_to_tree(inst) if isinstance(inst, FlagProduct) else inst


def _display(inst) -> str:
    return engine.display(inst)


def _cmd_dim(args):
    inst = _instance(args)
    tree = _as_tree(inst)
    record = {
        "input": _display(inst),
        "ambient": tree.ambient,
        "dimension": dimension(tree),
    }
    human = f"dimension {record['dimension']} (ambient {record['ambient']})"
    return record, human


def _cmd_classify(args):
    inst = _instance(args)
    tree = _as_tree(inst)
    oc = orbit_class(tree)
    ts = trivially_sparse(tree)
    record = {
        "input": _display(inst),
        "orbit_class": {
            "kind": oc.kind,
            "case_label": oc.case_label,
            "witness": oc.witness,
        },
        "trivially_sparse": {
            "violated": ts.violated,
            "vertex": ts.vertex,
            "lhs": ts.lhs,
            "rhs": ts.rhs,
        },
    }
    lines = [f"orbit class: {oc.kind}" + (f" (case {oc.case_label})" if oc.case_label else ""),
             f"  {oc.witness}"]
    if ts.violated:
        lines.append(
            f"trivially sparse: subtree at {ts.vertex} has dimension {ts.lhs} > {ts.rhs}"
        )
    else:
        lines.append("trivially sparse: no")
    return record, "\n".join(lines)


def _rules_listing() -> str:
    lines = []
    for rule in engine.RULES:
        lines.append(f"{rule.rule_id:18} {rule.kind:8} {rule.summary}")
        lines.append(f"{'':18} {'':8} {rule.citation}")
    return "\n".join(lines)


def _cmd_decide(args):
    if args.rules:
        record = {
            "rules": [
                {"rule_id": r.rule_id, "kind": r.kind, "summary": r.summary,
                 "citation": r.citation}
                for r in engine.RULES
            ]
        }
        return record, _rules_listing()
    inst = _instance(args)
    verdict = engine.decide(inst, depth=args.depth)
    record = verdict.to_json_dict()
    lines = [f"{verdict.status}: {verdict.input}"]
    for step in verdict.trace:
        arrow = f"{step.before} -> {step.after}" if step.after != step.before else step.before
        lines.append(f"  {step.rule_id:18} {arrow}")
        if step.note:
            lines.append(f"  {'':18} {step.note}")
        lines.append(f"  {'':18} [{step.citation}]")
    if verdict.status == engine.UNKNOWN:
        lines.append(f"  no rule applies to the reduced instance {verdict.final}")
    return record, "\n".join(lines)


def _cmd_certify(args):
    inst = _instance(args)
    report = certify_density(inst, p=args.prime, trials=args.trials, seed=args.seed)
    record = {"input": _display(inst), **report.to_json_dict()}
    if report.certified_dense:
        human = (
            f"DenseCertified: a configuration over F_{report.p} has orbit rank "
            f"{report.variety_dim} = dim"
        )
    else:
        human = (
            f"Inconclusive: ranks {list(report.ranks)} stayed below the dimension "
            f"{report.variety_dim} over F_{report.p} ({report.trials} trials)"
        )
    return record, human


def _cmd_orbits(args):
    inst = _instance(args)
    report = enumerate_orbits(inst, q=args.q, cap=args.cap)
    record = {"input": _display(inst), **report.to_json_dict()}
    plural = "" if report.orbit_count == 1 else "s"
    human = (
        f"{report.orbit_count} orbit{plural} on {report.point_count} points "
        f"over F_{report.q}"
    )
    return record, human


def _cmd_crossratio(args):
    try:
        with open(args.pencil_file) as fh:
            data = json.load(fh)
    except OSError as e:
        raise ParseError(f"cannot read {args.pencil_file}: {e}") from None
    except json.JSONDecodeError as e:
        raise ParseError(f"bad JSON in {args.pencil_file}: {e.msg}", e.pos) from None
    try:
        p = data["p"]
        subspaces = [np.array(m, dtype=np.int64).T for m in data["subspaces"]]
        n = subspaces[0].shape[0]
        lower = np.array(data["lower"], dtype=np.int64).reshape(-1, n).T
        upper = np.array(data["upper"], dtype=np.int64).reshape(-1, n).T
    except (KeyError, ValueError, IndexError) as e:
        raise ParseError(f"pencil file needs p, subspaces, lower, upper: {e}") from None
    value = cross_ratio(subspaces, lower, upper, p)
    record = {"p": p, "value": value}
    return record, f"cross-ratio {value} mod {p}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treeorbits",
        description="dense-orbit decision procedures for subspace configuration varieties",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p_dim = sub.add_parser("dim", help="dimension of the configuration variety")
    _add_instance_args(p_dim)

    p_classify = sub.add_parser("classify", help="orbit class and the easy sparseness check")
    _add_instance_args(p_classify)

    p_decide = sub.add_parser("decide", help="dense/sparse verdict with a derivation trace")
    _add_instance_args(p_decide)
    p_decide.add_argument("--depth", type=int, default=1,
                          help="nesting allowed for the sparse-image rule (default 1)")
    p_decide.add_argument("--rules", action="store_true",
                          help="list the rule catalog and exit")

    p_certify = sub.add_parser("certify", help="randomized density certificate over F_p")
    _add_instance_args(p_certify)
    p_certify.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    p_certify.add_argument("--trials", type=int, default=3)
    p_certify.add_argument("--seed", type=int, default=0)

    p_orbits = sub.add_parser("orbits", help="exhaustive orbit count over a tiny field")
    _add_instance_args(p_orbits)
    p_orbits.add_argument("--q", type=int, default=2, help="field order in {2,3,4,5}")
    p_orbits.add_argument("--cap", type=int, default=DEFAULT_CAP)

    p_cr = sub.add_parser("crossratio", help="cross-ratio of four subspaces in a pencil")
    p_cr.add_argument("--pencil-file", required=True,
                      help="JSON: p, subspaces (4 lists of basis vectors), lower, upper")

    for p_sub in (p_dim, p_classify, p_decide, p_certify, p_orbits, p_cr):
        p_sub.add_argument("--json", action="store_true", help="machine-readable output")
    return parser


_COMMANDS = {
    "dim": _cmd_dim,
    "classify": _cmd_classify,
    "decide": _cmd_decide,
    "certify": _cmd_certify,
    "orbits": _cmd_orbits,
    "crossratio": _cmd_crossratio,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        record, human = _COMMANDS[args.verb](args)
    except CapExceeded as e:
        print(f"cap exceeded: {e}", file=sys.stderr)
        return 3
    except IterationLimit as e:
        print(f"internal error: {e}", file=sys.stderr)
        return 4
    except Error as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # pragma: no cover - defensive
        print(f"internal error: {e}", file=sys.stderr)
        return 4
    print(_dump(record) if args.json else human)
    return 0


if __name__ == "__main__":
    sys.exit(main())
