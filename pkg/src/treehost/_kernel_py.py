"""Pure-Python forward-checking search (fallback when the extension is absent).

Domains are Python ints used as bitsets over host vertices.  Positions are
pattern vertices in assignment order; ``later_adj[i]`` is a bitmask over
positions ``j > i`` adjacent to ``i`` in the pattern.
"""

from __future__ import annotations

from typing import Optional, Sequence


def search(
    later_adj: Sequence[int],
    dom0: Sequence[int],
    host_adj: Sequence[int],
) -> Optional[list[int]]:
    P = len(dom0)
    if P == 0:
        return []
    for d in dom0:
        if not d:
            return None
    doms: list[Optional[list[int]]] = [None] * P
    doms[0] = list(dom0)
    cand = [0] * P
    assign = [0] * P
    cand[0] = dom0[0]
    i = 0
    while i >= 0:
        c = cand[i]
        if not c:
            i -= 1
            continue
        low = c & -c
        cand[i] = c ^ low
        p = low.bit_length() - 1
        if i == P - 1:
            assign[i] = p
            return assign
        cur = doms[i]
        nxt = cur[:]
        notp = ~low
        adjp = host_adj[p]
        la = later_adj[i]
        ok = True
        for j in range(i + 1, P):
            d = cur[j] & notp
            if (la >> j) & 1:
                d &= adjp
            if not d:
                ok = False
                break
            nxt[j] = d
        if not ok:
            continue
        assign[i] = p
        i += 1
        doms[i] = nxt
        cand[i] = nxt[i]
    return None
