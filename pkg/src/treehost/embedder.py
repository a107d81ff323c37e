"""Recursive embedding of marked trees into stacked hosts.

A task is a connected piece of the input tree, up to two marked vertices and
a target copy.  Mark ``i`` must land next to the copy's ``o{i}``.  The piece
is split at a Jordan separator ``J``:

* at most one mark, or marks in different components: ``J`` goes to ``c``,
  each marked component to the variant-2 child sitting on ``(o1, c)`` or
  ``(c, o2)``, and every other component to copies hanging at ``c``;
* both marks in one component ``T1``: the median ``M`` of the two marks and
  ``J``'s neighbour in ``T1`` goes to ``c`` and ``J`` to ``c_r``; the three
  branches at ``M`` towards those vertices go to the variant-2 children on
  ``(o1, c)``, ``(c, o2)`` and ``(c, c_r)``, the other branches at ``M`` to
  copies at ``c`` and the other components at ``J`` to copies at ``c_r``.

Copies at a centre are handed out by :func:`treehost.stacked.allocate`.
Work is kept on an explicit stack.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import (
    AllocationInfeasible,
    CapacityExceeded,
    EmbeddingFailed,
    InvalidParams,
)
from .graph import AdjacencyConstraint, EmbeddingMap, verify_embedding
from .stacked import (
    OUTERPLANAR,
    HostCopy,
    HostGraph,
    allocate,
    build_host,
    build_uniform,
)
from .trees import MarkedTree, Tree, kary_tree


@dataclass(frozen=True)
class EmbedTask:
    tree: MarkedTree
    target: HostCopy

    def __post_init__(self):
        if len(self.tree.marks) > self.target.variant:
            raise InvalidParams("a variant-1 target takes at most one mark")


@dataclass(frozen=True)
class AllocationRequest:
    index: int
    depth: int
    marks: int = 1


@dataclass
class EmbedStats:
    tasks: int = 0
    case1: int = 0
    case2: int = 0
    case3: int = 0


def ceil_log2(x: int) -> int:
    return (x - 1).bit_length() if x > 1 else 0


def obligations(task: EmbedTask) -> list[AdjacencyConstraint]:
    roles = ("o1", "o2")
    return [AdjacencyConstraint(m, task.target.roles[r]) for m, r in zip(task.tree.marks, roles)]


class _Engine:
    def __init__(self, adj, host: HostGraph):
        self.adj = adj
        self.host = host
        self.removed = bytearray(len(adj))
        self.image = [-1] * len(adj)
        self.stats = EmbedStats()
        self.slack = 1 if host.flavor == OUTERPLANAR else 0

    # -- tree walks restricted to live vertices

    def _walk(self, root):
        adj, removed = self.adj, self.removed
        parent = {root: -1}
        order = [root]
        stack = [root]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if not removed[w] and w not in parent:
                    parent[w] = v
                    order.append(w)
                    stack.append(w)
        return order, parent

    def _split(self, root):
        """Jordan separator of the live component of ``root`` and its branches.

        Returns ``(J, n, branches)`` where each branch is ``(r, members)``
        with ``r`` the neighbour of ``J`` inside it.
        """
        order, parent = self._walk(root)
        n = len(order)
        size = dict.fromkeys(order, 1)
        heavy = dict.fromkeys(order, 0)
        for v in reversed(order):
            p = parent[v]
            if p >= 0:
                size[p] += size[v]
                if size[v] > heavy[p]:
                    heavy[p] = size[v]
        half = n // 2
        J = min(v for v in order if heavy[v] <= half and n - size[v] <= half)
        self.removed[J] = 1
        branches = []
        for w in sorted(self.adj[J]):
            if not self.removed[w]:
                members, _ = self._walk(w)
                branches.append((w, set(members)))
        return J, n, branches

    def _place(self, v, host_vertex):
        self.image[v] = host_vertex
        self.removed[v] = 1

    def _need_edge(self, a, b, why):
        if not self.host.has_edge(a, b):
            raise EmbeddingFailed(f"{why}: host vertices {a} and {b} are not adjacent")

    # -- main loop

    def run(self, root, marks, target: HostCopy):
        stack = [(root, marks, target)]
        while stack:
            root, marks, copy = stack.pop()
            self.stats.tasks += 1
            self._task(root, marks, copy, stack)

    def _task(self, root, marks, copy: HostCopy, stack):
        d = copy.depth
        if d == 0:
            order, _ = self._walk(root)
            if len(order) != 1:
                raise CapacityExceeded(f"{len(order)} vertices for a depth-0 copy")
            c = copy.roles["c"]
            self._place(root, c)
            for m, role in marks:
                self._need_edge(c, copy.roles[role], "mark at base copy")
            return
        J, n, branches = self._split(root)
        if n > 1 << d:
            raise CapacityExceeded(f"{n} vertices exceed 2^{d}")
        self.removed[J] = 0

        def branch_of(x):
            for i, (r, members) in enumerate(branches):
                if x in members:
                    return i
            return -1

        where = [(m, role, -1 if m == J else branch_of(m)) for m, role in marks]
        if len(where) == 2 and where[0][2] >= 0 and where[0][2] == where[1][2]:
            self.stats.case3 += 1
            self._case3(J, branches, where, copy, stack)
            return
        if len(where) == 2 and where[0][2] >= 0 and where[1][2] >= 0:
            self.stats.case2 += 1
        else:
            self.stats.case1 += 1
        c = copy.roles["c"]
        self._place(J, c)
        used = set()
        reserved = set()
        for m, role, bi in where:
            if bi < 0:
                self._need_edge(c, copy.roles[role], "mark at separator")
                continue
            r, _ = branches[bi]
            used.add(bi)
            if role == "o1":
                child = copy.child(0)
                stack.append((r, [(m, "o1"), (r, "o2")], child))
            else:
                child = copy.child(1)
                reserved.add(child.id)
                stack.append((r, [(r, "o1"), (m, "o2")], child))
        rest = [branches[i] for i in range(len(branches)) if i not in used]
        self._spread(rest, copy, c, reserved, 2 << d, stack)

    def _case3(self, J, branches, where, copy: HostCopy, stack):
        (m1, _, bi), (m2, _, _) = where
        r1, members = branches[bi]
        self._place(J, copy.roles["c_r"])
        M = self._median(r1, m1, m2)
        c, c_r = copy.roles["c"], copy.roles["c_r"]
        self._place(M, c)
        if M == m1:
            self._need_edge(c, copy.roles["o1"], "median carries mark 1")
        if M == m2:
            self._need_edge(c, copy.roles["o2"], "median carries mark 2")
        if M == r1:
            self._need_edge(c, c_r, "median next to separator")
        subs = []
        for w in sorted(self.adj[M]):
            if not self.removed[w]:
                sub, _ = self._walk(w)
                subs.append((w, set(sub)))
        reserved = set()
        used = set()
        for i, (rp, sub) in enumerate(subs):
            if m1 in sub:
                used.add(i)
                stack.append((rp, [(m1, "o1"), (rp, "o2")], copy.child(0)))
            elif m2 in sub:
                used.add(i)
                ch = copy.child(1)
                reserved.add(ch.id)
                stack.append((rp, [(rp, "o1"), (m2, "o2")], ch))
            elif r1 in sub:
                used.add(i)
                ch = copy.child(2)
                reserved.add(ch.id)
                stack.append((rp, [(rp, "o1"), (r1, "o2")], ch))
        d = copy.depth
        rest_m = [(rp, sub) for i, (rp, sub) in enumerate(subs) if i not in used]
        self._spread(rest_m, copy, c, reserved, 1 << d, stack, slack=0)
        rest_j = [branches[i] for i in range(len(branches)) if i != bi]
        self._spread(rest_j, copy, c_r, set(), 2 << d, stack)

    def _median(self, a, b, c):
        _, parent = self._walk(a)
        on_ab = set()
        x = b
        while x != -1:
            on_ab.add(x)
            x = parent[x]
        x = c
        while x not in on_ab:
            x = parent[x]
        return x

    def _spread(self, parts, copy, anchor, reserved, budget, stack, slack=None):
        if not parts:
            return
        if slack is None:
            slack = self.slack
        depths = [ceil_log2(len(members)) for _, members in parts]
        demand = sum(1 << x for x in depths)
        if demand > budget - slack:
            raise AllocationInfeasible(f"budget identity violated: demand {demand} > {budget - slack}")
        pool = _pool(copy, anchor, reserved)
        slots = allocate(depths, pool)
        for (r, _), slot in zip(parts, slots):
            stack.append((r, [(r, "o1")], slot))


def _pool(copy: HostCopy, anchor: int, reserved) -> list[HostCopy]:
    out = []
    stack = [ch for ch in reversed(copy.children) if ch.roles["o1"] == anchor]
    while stack:
        c = stack.pop()
        if c.id in reserved:
            ch = c.chain_child
            if ch is not None:
                stack.append(ch)
        else:
            out.append(c)
    out.sort(key=lambda c: c.id)
    return out


def _tree_adj(t: Tree):
    return [sorted(t.neighbors(v)) for v in range(t.vertex_count)]


def embed_marked(task: EmbedTask, host: HostGraph, verify: bool = True, stats: Optional[EmbedStats] = None) -> EmbeddingMap:
    """Embed ``task.tree`` into the interior of ``task.target``."""
    t = task.tree.tree
    copy = task.target
    if t.vertex_count > 1 << copy.depth:
        raise CapacityExceeded(f"{t.vertex_count} vertices exceed 2^{copy.depth}")
    eng = _Engine(_tree_adj(t), host)
    marks = list(zip(task.tree.marks, ("o1", "o2")))
    eng.run(0 if not marks else marks[0][0], marks, copy)
    if stats is not None:
        for k in ("tasks", "case1", "case2", "case3"):
            setattr(stats, k, getattr(stats, k) + getattr(eng.stats, k))
    emb = EmbeddingMap(t.vertex_count, tuple(eng.image))
    if verify:
        bad = [x for x in emb.image if not copy.contains(x)]
        if bad or not verify_embedding(t.underlying, host, emb, adjacency_constraints=obligations(task)):
            raise EmbeddingFailed("produced map does not verify")
    return emb


def universal_depth(n: int) -> int:
    return ceil_log2(n)


def embed_universal(t: Tree, host: Optional[HostGraph] = None, stats: Optional[EmbedStats] = None) -> tuple[HostGraph, EmbeddingMap]:
    """Embed ``t`` into the depth-ceil(log2 n) outerplanar host, marking vertex 0."""
    d = universal_depth(t.vertex_count)
    if host is None or host.depth != d or host.flavor != OUTERPLANAR or host.variant != 1:
        host = build_host(d, 1, OUTERPLANAR)
    task = EmbedTask(MarkedTree(t, (0,)), host.root)
    return host, embed_marked(task, host, stats=stats)


# ------------------------------------------------------------------ k-ary trees


def kary_depth(k: int, h: int) -> int:
    """Depth of the uniform host used for complete k-ary trees of height h."""
    return h * kary_step(k) + 1


def kary_step(k: int) -> int:
    """ceil(log2(k/3)) + 1, i.e. the least s >= 1 with 3 * 2^(s-1) >= k."""
    s = 1
    while 3 << (s - 1) < k:
        s += 1
    return s


def _centre_slots(copy: HostCopy, levels: int) -> list[HostCopy]:
    """The 3 * 2^(levels-1) copies ``levels`` below ``copy`` that contain its centre as a role."""
    c = copy.roles["c"]
    frontier = [copy]
    for _ in range(levels):
        frontier = [ch for x in frontier for ch in x.children if c in ch.roles.values()]
    return frontier


def embed_kary(k: int, h: int) -> tuple[HostGraph, EmbeddingMap, Tree]:
    """Embed the complete k-ary tree of height h into the uniform host, root at its centre."""
    if k < 2 or h < 0:
        raise InvalidParams("need k >= 2 and h >= 0")
    t = kary_tree(k, h)
    s = kary_step(k)
    host = build_uniform(kary_depth(k, h))
    image = [-1] * t.vertex_count
    image[0] = host.root.roles["c"]
    level = [(0, host.root)]
    nxt_id = 1
    for _ in range(h):
        new_level = []
        for v, copy in level:
            slots = _centre_slots(copy, s)
            if len(slots) < k:
                raise AllocationInfeasible(f"only {len(slots)} sub-copies at depth {copy.depth - s}")
            for slot in slots[:k]:
                image[nxt_id] = slot.roles["c"]
                new_level.append((nxt_id, slot))
                nxt_id += 1
        level = new_level
    emb = EmbeddingMap(t.vertex_count, tuple(image))
    if not verify_embedding(t.underlying, host, emb):
        raise EmbeddingFailed("k-ary embedding does not verify")
    return host, emb, t
