"""Command-line entry point.

Structured output is deterministic JSON on stdout; diagnostics go to stderr.
Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import errors
from .codecs import (
    certificate_dict,
    dumps,
    graph6_decode,
    graph6_encode,
    planar_code_decode,
)
from .graph import EmbeddingMap, verify_embedding
from .planarity import is_planar

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3
INLINE_HOST = 20_000
"""Hosts larger than this are described by parameters instead of inline graph6."""

_USAGE_ERRORS = (
    errors.InvalidParams,
    errors.InvalidPin,
    errors.MalformedGraph6,
    errors.MalformedPlanarCode,
    errors.NonSimpleGraph,
    errors.DivisibilityError,
    errors.SizeMismatch,
    errors.NotOuterplanar,
    errors.NotMaximalOuterplanar,
    errors.CapacityExceeded,
    errors.UnknownAnchor,
)


class VerificationFailed(Exception):
    pass


def _emit(doc) -> None:
    sys.stdout.write(dumps(doc) + "\n")


def _tree(text: str):
    from .trees import Tree

    try:
        return Tree(graph6_decode(text))
    except errors.MalformedGraph6:
        raise
    except ValueError as exc:
        raise errors.InvalidParams(f"not a tree: {exc}") from None


# ----------------------------------------------------------------- host helpers


def _stacked_host(spec: dict):
    from .stacked import build_host, build_uniform

    if spec["flavor"] == "uniform":
        return build_uniform(spec["depth"])
    return build_host(spec["depth"], spec["variant"], spec["flavor"])


def _host_doc(host, registry: bool) -> dict:
    doc = {"depth": host.depth, "variant": host.variant, "flavor": host.flavor, "vertices": host.vertex_count}
    if host.vertex_count <= INLINE_HOST or registry:
        doc["host"] = graph6_encode(host.graph)
        doc["host_registry"] = host.registry_dump()
    else:
        doc["host"] = None
    return doc


def _embedding_doc(kind, pattern, host, emb, adjacency=(), **extra) -> dict:
    inline = host.vertex_count <= INLINE_HOST
    doc = certificate_dict(pattern, host.graph if inline else None, emb.image, (), adjacency, **extra)
    doc["kind"] = kind
    doc["vertices"] = host.vertex_count
    return doc


# ------------------------------------------------------------------ subcommands


def cmd_build_host(a) -> int:
    from .stacked import build_host, build_uniform

    if a.flavor == "uniform":
        host = build_uniform(a.depth)
    else:
        if a.variant not in (1, 2):
            raise errors.InvalidParams("variant must be 1 or 2 for recursive hosts")
        host = build_host(a.depth, a.variant, a.flavor, materialize=True)
    doc = _host_doc(host, True)
    doc["kind"] = "host"
    _emit(doc)
    return EXIT_OK


def cmd_embed_tree(a) -> int:
    from .embedder import EmbedTask, embed_marked, obligations, universal_depth
    from .stacked import build_host
    from .trees import MarkedTree, random_tree

    if a.tree is not None:
        t = _tree(a.tree)
    elif a.random is not None:
        t = random_tree(a.random, a.seed)
    else:
        raise errors.InvalidParams("give --tree or --random")
    if a.n is not None and a.n != t.vertex_count:
        raise errors.SizeMismatch(f"--n {a.n} but the tree has {t.vertex_count} vertices")
    marks = tuple(a.mark) if a.mark else (0,)
    depth = a.depth if a.depth is not None else universal_depth(t.vertex_count)
    variant = a.variant if a.variant is not None else max(1, len(marks))
    host = build_host(depth, variant, a.flavor)
    task = EmbedTask(MarkedTree(t, marks), host.root)
    emb = embed_marked(task, host)
    adjacency = [(c.pattern_vertex, c.required_host_neighbor) for c in obligations(task)]
    doc = _embedding_doc("embedding", t.underlying, host, emb, adjacency, depth=depth, variant=variant, flavor=a.flavor)
    doc["interior_from"] = host.root.start
    if host.vertex_count <= INLINE_HOST:
        doc["host_registry"] = host.registry_dump()
    _emit(doc)
    return EXIT_OK


def cmd_embed_kary(a) -> int:
    from .embedder import embed_kary
    from .stacked import UNIFORM

    host, emb, t = embed_kary(a.k, a.h)
    doc = _embedding_doc("embedding", t.underlying, host, emb, depth=host.depth, variant=0, flavor=UNIFORM, k=a.k, h=a.h)
    _emit(doc)
    return EXIT_OK


def cmd_three_trees(a) -> int:
    from .three_trees import build_three_tree_host

    trees = [_tree(x) for x in (a.t1, a.t2, a.t3)]
    th = build_three_tree_host(*trees)
    doc = th.to_dict()
    doc["kind"] = "triple"
    doc["trees"] = [graph6_encode(t.underlying) for t in trees]
    _emit(doc)
    return EXIT_OK


def cmd_bounds(a) -> int:
    from .three_trees import caterpillars_infeasible, caterpillar_lower_bound

    value = caterpillar_lower_bound(a.n, a.k, a.l)
    if a.json:
        doc = {"kind": "bounds", "n": a.n, "k": a.k, "l": a.l, "value": str(value)}
        if a.n % 2 == 0:
            doc["caterpillars_infeasible"] = caterpillars_infeasible(a.n, a.l)
        _emit(doc)
    else:
        sys.stdout.write(f"{value}\n")
    return EXIT_OK


def cmd_outer_build_gn(a) -> int:
    from .outerplanar import build_gn

    core = build_gn(a.n)
    doc = {
        "kind": "gn",
        "n": a.n,
        "host": graph6_encode(core.graph),
        "roles": {str(v): core.names[v] for v in sorted(core.names)},
        "root_edge": list(core.root_edge),
    }
    _emit(doc)
    return EXIT_OK


def _script_instances(host) -> list[dict]:
    out = []
    for inst in host.instances():
        out.append({"m": inst.m, "ids": list(inst.ids), "attachments": [[inst.ids[x], inst.ids[y]] for x, y in inst.attachment_keys()]})
    return out


def cmd_outer_build_script_g(a) -> int:
    from .outerplanar import build_script_g

    host = build_script_g(a.n)
    doc = {"kind": "script-g", "n": a.n, "vertices": host.vertex_count, "host": graph6_encode(host.graph), "instances": _script_instances(host)}
    _emit(doc)
    return EXIT_OK


def cmd_outer_embed(a) -> int:
    from .outerplanar import build_script_g, embed_outerplanar

    h = graph6_decode(a.pattern)
    host = build_script_g(a.host_n if a.host_n is not None else max(3, h.vertex_count))
    host, emb = embed_outerplanar(h, host)
    _emit(_embedding_doc("outerplanar-embedding", h, host, emb, host_n=host.n))
    return EXIT_OK


def _read_candidates(a, n):
    from .search import enumerate_stacked, is_stacked

    if a.planar_code:
        with open(a.planar_code, "rb") as fh:
            data = fh.read()
        graphs = [g for g, _ in planar_code_decode(data)]
        graphs = [g for g in graphs if g.vertex_count == n]
        if a.stacked_only:
            graphs = [g for g in graphs if is_stacked(g)]
        return graphs
    return enumerate_stacked(n)


def cmd_search(a) -> int:
    from .search import NO_UNIVERSAL_FROM, find_universal

    if not 3 <= a.n < NO_UNIVERSAL_FROM:
        raise errors.InvalidParams(f"--n must be in [3, {NO_UNIVERSAL_FROM - 1}]")
    jobs = a.jobs if a.jobs is not None else (os.cpu_count() or 1)
    cert = find_universal(a.n, _read_candidates(a, a.n), jobs=jobs)
    doc = cert.to_dict(timing=a.timing)
    doc["kind"] = "search"
    doc["n"] = a.n
    _emit(doc)
    return EXIT_OK


# ----------------------------------------------------------------------- verify


def _check(cond: bool, what: str) -> None:
    if not cond:
        raise VerificationFailed(what)


def _verify_embedding_doc(doc) -> None:
    pattern = graph6_decode(doc["pattern"])
    image = doc["image"]
    _check(len(image) == pattern.vertex_count, "image length differs from pattern size")
    host = None
    if doc.get("host") is not None:
        host = graph6_decode(doc["host"])
    if doc["kind"] == "outerplanar-embedding":
        from .outerplanar import build_script_g

        rebuilt = build_script_g(doc["host_n"], materialize=host is None)
    elif "flavor" in doc:
        rebuilt = _stacked_host(doc)
    else:
        rebuilt = None
    if rebuilt is not None:
        _check(rebuilt.vertex_count == doc.get("vertices", rebuilt.vertex_count), "host size differs from its parameters")
        if host is not None:
            _check(graph6_encode(rebuilt.graph) == doc["host"], "inline host differs from its parameters")
        else:
            host = rebuilt
    _check(host is not None, "certificate names no host")
    if "interior_from" in doc:
        _check(all(x >= doc["interior_from"] for x in image), "a vertex maps onto an outer role vertex")
    pins = [tuple(p) for p in doc.get("pins", [])]
    adjacency = [tuple(p) for p in doc.get("adjacency", [])]
    emb = EmbeddingMap(pattern.vertex_count, tuple(image))
    _check(verify_embedding(pattern, host, emb, pins, adjacency), "embedding does not verify")


def _verify_triple(doc) -> None:
    from .three_trees import TripleHost, check_triple, host_sequences
    from .trees import Tree

    trees = [Tree(graph6_decode(x)) for x in doc["trees"]]
    n = trees[0].vertex_count
    host = graph6_decode(doc["host"])
    _check(host.vertex_count == 3 * n // 2, "host does not have floor(3n/2) vertices")
    _check([list(s) for s in host_sequences(n)] == doc["sequences"], "spine sequences differ")
    th = TripleHost(host, tuple(EmbeddingMap(n, tuple(m)) for m in doc["maps"]), tuple(tuple(s) for s in doc["sequences"]))
    try:
        check_triple(th, trees)
    except errors.EmbeddingFailed as exc:
        raise VerificationFailed(str(exc)) from None


def _verify_search(doc) -> None:
    from .canon import canonical_form
    from .search import SearchCertificate
    from .trees import FREE_TREE_COUNTS, Tree

    n = doc["n"]
    g = graph6_decode(doc["candidate"])
    maps = [(Tree(graph6_decode(m["tree"])), EmbeddingMap(n, tuple(m["image"]))) for m in doc["maps"]]
    failing = Tree(graph6_decode(doc["failing"])) if doc["failing"] is not None else None
    cert = SearchCertificate(g, doc["universal"], maps, failing)
    _check(cert.verify(), "search certificate does not verify")
    if cert.universal:
        forms = {canonical_form(t.underlying) for t, _ in maps}
        _check(all(t.vertex_count == n for t, _ in maps), "a tree has the wrong order")
        _check(len(forms) == len(maps) == FREE_TREE_COUNTS[n], "maps do not cover every tree of the order")


def _verify_host(doc) -> None:
    if doc["kind"] == "host":
        rebuilt = _stacked_host(doc).graph
    elif doc["kind"] == "gn":
        from .outerplanar import build_gn

        rebuilt = build_gn(doc["n"]).graph
    else:
        from .outerplanar import build_script_g

        rebuilt = build_script_g(doc["n"]).graph
    _check(graph6_encode(rebuilt) == doc["host"], "host differs from a fresh construction")


def _verify_bounds(doc) -> None:
    from .three_trees import caterpillar_lower_bound

    _check(str(caterpillar_lower_bound(doc["n"], doc["k"], doc["l"])) == doc["value"], "bound value differs")


def verify_document(doc: dict) -> None:
    """Raise ``VerificationFailed`` unless ``doc`` checks out."""
    kind = doc.get("kind")
    if kind is None:
        kind = "embedding" if "image" in doc else None
        doc = dict(doc, kind=kind)
    handlers = {
        "embedding": _verify_embedding_doc,
        "outerplanar-embedding": _verify_embedding_doc,
        "triple": _verify_triple,
        "search": _verify_search,
        "host": _verify_host,
        "gn": _verify_host,
        "script-g": _verify_host,
        "bounds": _verify_bounds,
    }
    if kind not in handlers:
        raise errors.InvalidParams(f"unrecognized document kind {kind!r}")
    try:
        handlers[kind](doc)
    except (KeyError, TypeError, IndexError) as exc:
        raise VerificationFailed(f"malformed certificate: {exc!r}") from None
    except ValueError as exc:
        if isinstance(exc, errors.TreehostError):
            raise
        raise VerificationFailed(f"malformed certificate: {exc}") from None


def _load(path: str):
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return text


def cmd_verify(a) -> int:
    try:
        doc = json.loads(_load(a.file))
    except json.JSONDecodeError as exc:
        raise errors.InvalidParams(f"not JSON: {exc}") from None
    verify_document(doc)
    sys.stderr.write("ok\n")
    return EXIT_OK


def cmd_render(a) -> int:
    from .render import render_svg

    text = _load(a.file).strip()
    highlight = ()
    if text.startswith("{"):
        doc = json.loads(text)
        if doc.get("host") is not None:
            host = graph6_decode(doc["host"])
        elif "candidate" in doc:
            host = graph6_decode(doc["candidate"])
        else:
            raise errors.InvalidParams("document has no inline host to draw")
        if "pattern" in doc:
            img = doc["image"]
            highlight = [(img[u], img[v]) for u, v in graph6_decode(doc["pattern"]).edges()]
    else:
        host = graph6_decode(text.splitlines()[0])
    if not is_planar(host):
        raise errors.InvalidParams("only planar graphs can be drawn")
    svg = render_svg(host, highlight)
    if a.output:
        with open(a.output, "w", encoding="utf-8") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


# ------------------------------------------------------------------------ parser



def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="treehost", description=__doc__.splitlines()[0])
    p.add_argument("--max-vertices", type=int, help="cap on materialized graph size (sets TREEHOST_MAX_VERTICES)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("build-host", help="build a stacked host and dump it with its copy registry")
    s.add_argument("--depth", type=int, required=True)
    s.add_argument("--variant", type=int, default=1, help="1 or 2 (ignored for uniform)")
    s.add_argument("--flavor", choices=["uniform", "triangulated", "outerplanar"], default="outerplanar")
    s.set_defaults(func=cmd_build_host)

    s = sub.add_parser("embed-tree", help="embed a tree into a stacked host")
    s.add_argument("--tree", help="tree in graph6")
    s.add_argument("--random", type=int, metavar="N", help="embed a random tree on N vertices instead")
    s.add_argument("--seed", type=int, default=0, help="seed for --random")
    s.add_argument("--n", type=int, help="expected tree size (checked)")
    s.add_argument("--depth", type=int, help="host depth (default ceil(log2 n))")
    s.add_argument("--variant", type=int, choices=[1, 2])
    s.add_argument("--flavor", choices=["triangulated", "outerplanar"], default="outerplanar")
    s.add_argument("--mark", type=int, action="append", help="marked tree vertex (repeat for two)")
    s.set_defaults(func=cmd_embed_tree)

    s = sub.add_parser("embed-kary", help="embed the complete k-ary tree of height h into a uniform host")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--h", type=int, required=True)
    s.set_defaults(func=cmd_embed_kary)

    s = sub.add_parser("three-trees", help="planar host on floor(3n/2) vertices for three trees")
    for name in ("--t1", "--t2", "--t3"):
        s.add_argument(name, required=True, help="tree in graph6")
    s.set_defaults(func=cmd_three_trees)

    s = sub.add_parser("bounds", help="lower bound for hosts of three caterpillars")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--l", type=int, required=True)
    s.add_argument("--json", action="store_true", help="emit a verifiable JSON document")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("outerplanar", help="hosts for outerplanar graphs")
    osub = s.add_subparsers(dest="action", required=True)
    o = osub.add_parser("build-gn", help="host for rooted path-like graphs")
    o.add_argument("--n", type=int, required=True)
    o.set_defaults(func=cmd_outer_build_gn)
    o = osub.add_parser("build-script-g", help="recursive host for all outerplanar graphs")
    o.add_argument("--n", type=int, required=True)
    o.set_defaults(func=cmd_outer_build_script_g)
    o = osub.add_parser("embed", help="embed an outerplanar graph")
    o.add_argument("--pattern", required=True, help="outerplanar graph in graph6")
    o.add_argument("--host-n", type=int, help="host parameter (default: pattern size)")
    o.set_defaults(func=cmd_outer_embed)

    s = sub.add_parser("search", help="find a small triangulation universal for all trees of an order")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--stacked-only", action="store_true", help="keep only stacked candidates from --planar-code")
    s.add_argument("--planar-code", metavar="FILE", help="read candidates from a planar_code file")
    s.add_argument("--jobs", type=int, help="worker processes (default: all cores)")
    s.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical output)")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("verify", help="re-check any emitted JSON document")
    s.add_argument("file", help="path, or - for stdin")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("render", help="draw a planar host or certificate as SVG")
    s.add_argument("file", help="graph6 or JSON document, or - for stdin")
    s.add_argument("-o", "--output", help="write SVG here instead of stdout")
    s.set_defaults(func=cmd_render)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if a.max_vertices is not None and a.max_vertices <= 0:
        sys.stderr.write("error: --max-vertices must be positive\n")
        return EXIT_USAGE
    saved = os.environ.get("TREEHOST_MAX_VERTICES")
    if a.max_vertices is not None:
        os.environ["TREEHOST_MAX_VERTICES"] = str(a.max_vertices)
    try:
        return a.func(a)
    except VerificationFailed as exc:
        sys.stderr.write(f"verification failed: {exc}\n")
        return EXIT_FAIL
    except errors.ResourceLimit as exc:
        sys.stderr.write(f"resource limit: {exc}\n")
        return EXIT_LIMIT
    except _USAGE_ERRORS as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except errors.TreehostError as exc:
        sys.stderr.write(f"failed: {exc}\n")
        return EXIT_FAIL
    finally:
        if a.max_vertices is not None:
            if saved is None:
                os.environ.pop("TREEHOST_MAX_VERTICES", None)
            else:
                os.environ["TREEHOST_MAX_VERTICES"] = saved

if __name__ == "__main__":
    sys.exit(main())
