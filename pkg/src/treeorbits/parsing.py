"""Text input formats: chain notation for trees, JSON trees, product grammar.

Chain notation: ``a:1>b:2>r:4 | c:2>r`` lists leaf-to-root chains joined
with ``|``; a token is ``name:label`` or a bare integer serving as both.
Repeated names merge into one vertex (labels must agree).

JSON trees: ``{"labels": {...}, "edges": [[src, dst], ...]}`` with an
optional ``"root"`` that must match the inferred root.

Products: ``F(k1,...,kr;n)``, Grassmannian sugar ``G(k;n)``, joined with
``*`` and powered with ``^m``.
"""

from __future__ import annotations

import json
import re

from .errors import BoundsError, EmptyInput, LabelViolation, NotATree, ParseError
from .products import FlagProduct
from .trees import LabeledTree, validate_tree

_TOKEN_RE = re.compile(r"^([A-Za-z0-9_.\-]+?)(?::(\d+))?$")


def parse_tree_dsl(text: str) -> LabeledTree:
    """Parse chain notation; raises ParseError with a character position."""
    if not text.strip():
        raise EmptyInput("empty tree text")
    chains: list[list[tuple[str, int | None, int]]] = []
    labels: dict[str, int] = {}
    first_seen: dict[str, int] = {}
    offset = 0
    for chain_text in text.split("|"):
        chain: list[tuple[str, int | None, int]] = []
        token_pos = offset
        for raw in chain_text.split(">"):
            tok = raw.strip()
            pos = token_pos + len(raw) - len(raw.lstrip())
            token_pos += len(raw) + 1
            if not tok:
                raise ParseError("empty vertex token", pos)
            m = _TOKEN_RE.match(tok)
            if not m:
                raise ParseError(f"bad vertex token {tok!r}", pos)
            name, lab_text = m.groups()
            lab = int(lab_text) if lab_text is not None else (
                int(name) if name.isdigit() else None
            )
            if lab is not None:
                if name in labels and labels[name] != lab:
                    raise ParseError(
                        f"vertex {name!r} relabeled from {labels[name]} to {lab}", pos
                    )
                labels[name] = lab
            first_seen.setdefault(name, pos)
            chain.append((name, lab, pos))
        offset += len(chain_text) + 1
        chains.append(chain)
    for name, pos in first_seen.items():
        if name not in labels:
            raise ParseError(f"vertex {name!r} never gets a label, like {name}:3", pos)
    edges: list[tuple[str, str]] = []
    for chain in chains:
        for (prev, _, _), (name, _, pos) in zip(chain, chain[1:]):
            if labels[prev] >= labels[name]:
                raise LabelViolation(
                    f"label must increase along {prev!r}>{name!r} "
                    f"({labels[prev]} >= {labels[name]}, at position {pos})"
                )
            edges.append((prev, name))
    return validate_tree(labels, edges)


def parse_tree_json(text: str) -> LabeledTree:
    """Parse the JSON tree form, checking any declared root against the inferred one."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"bad JSON: {e.msg}", e.pos) from None
    if not isinstance(data, dict) or "labels" not in data or "edges" not in data:
        raise ParseError('JSON tree needs "labels" and "edges" keys')
    if not isinstance(data["labels"], dict):
        raise ParseError('"labels" must map vertex names to integers')
    edges = data["edges"]
    if not isinstance(edges, list) or any(
        not isinstance(e, (list, tuple)) or len(e) != 2 for e in edges
    ):
        raise ParseError('"edges" must be a list of [source, target] pairs')
    tree = validate_tree(data["labels"], [tuple(e) for e in edges])
    declared = data.get("root")
    if declared is not None and str(declared) != tree.root:
        raise NotATree(f"declared root {declared!r} but the edges lead to {tree.root!r}")
    return tree


def parse_tree_spec(text: str) -> LabeledTree:
    """Tree text in either format: JSON when it starts with '{', else chains."""
    if text.lstrip().startswith("{"):
        return parse_tree_json(text)
    return parse_tree_dsl(text)


_PRODUCT_TOKEN = re.compile(r"\s*(?:(\d+)|([FG*^();,])|(.))")


def _tokenize_product(text: str):
    text = text.rstrip()
    out = []
    i = 0
    while i < len(text):
        m = _PRODUCT_TOKEN.match(text, i)
        if m.group(3) is not None:
            raise ParseError(f"unexpected character {m.group(3)!r}", m.start(3))
        if m.group(1) is not None:
            out.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            out.append((m.group(2), None, m.start(2)))
        i = m.end()
    out.append(("end", None, len(text)))
    return out


def parse_product(text: str) -> FlagProduct:
    """Parse the product grammar; all atoms must share one ambient dimension."""
    tokens = _tokenize_product(text)
    idx = 0

    def peek():
        return tokens[idx][0]

    def take(kind):
        nonlocal idx
        tok, val, pos = tokens[idx]
        if tok != kind:
            raise ParseError(f"expected {kind!r}, found {tok!r}", pos)
        idx += 1
        return val, pos

    def atom():
        tok = peek()
        if tok not in ("F", "G"):
            raise ParseError(f"expected F(...) or G(...), found {tok!r}", tokens[idx][2])
        _, pos = take(tok)
        take("(")
        ks = [take("int")[0]]
        while peek() == ",":
            take(",")
            ks.append(take("int")[0])
        if tok == "G" and len(ks) != 1:
            raise ParseError("G takes a single dimension, like G(2;5)", pos)
        take(";")
        n, _ = take("int")
        take(")")
        return tuple(ks), n

    factors: list[tuple[int, ...]] = []
    ambient = None
    while True:
        ks, n = atom()
        if ambient is None:
            ambient = n
        elif n != ambient:
            raise BoundsError(f"factors disagree on the ambient dimension: {ambient} vs {n}")
        count = 1
        if peek() == "^":
            take("^")
            count, pos = take("int")
            if count < 1:
                raise BoundsError(f"exponent must be at least 1, got {count}")
        factors.extend([ks] * count)
        if peek() == "*":
            take("*")
            continue
        take("end")
        break
    return FlagProduct(tuple(factors), ambient)


def parse_instance(text: str):
    """Auto-detect: JSON tree, product grammar, or chain notation."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_tree_json(text)
    if re.match(r"[FG]\(", stripped):
        return parse_product(text)
    return parse_tree_dsl(text)
