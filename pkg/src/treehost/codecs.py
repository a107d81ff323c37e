"""graph6 and planar_code codecs plus the JSON certificate format."""

from __future__ import annotations

import json
from typing import Iterator, Optional, Union

from .errors import MalformedGraph6, MalformedPlanarCode, NonSimpleGraph
from .graph import Graph

GRAPH6_HEADER = ">>graph6<<"
PLANAR_CODE_HEADER = b">>planar_code<<"


# --------------------------------------------------------------------- graph6


def _size_field(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n < 1 << 36:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise ValueError("graph6 supports at most 2^36 - 1 vertices")


def graph6_encode(g: Graph) -> str:
    n = g.vertex_count
    out = bytearray(_size_field(n))
    acc = 0
    nbits = 0
    for j in range(1, n):
        nb = g.neighbors(j)
        for i in range(j):
            acc = (acc << 1) | (1 if i in nb else 0)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = 0
                nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return out.decode("ascii")


def graph6_decode(text: Union[str, bytes]) -> Graph:
    if isinstance(text, bytes):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError:
            raise MalformedGraph6("graph6 must be ASCII") from None
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    data = s.encode("ascii", errors="replace")
    if not data:
        raise MalformedGraph6("empty graph6 string")
    for i, b in enumerate(data):
        if not 63 <= b <= 126:
            raise MalformedGraph6(f"byte {b} at position {i} outside 63..126")
    if data[0] != 126:
        n, k = data[0] - 63, 1
    elif len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise MalformedGraph6("truncated 36-bit size field")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        k = 8
    else:
        if len(data) < 4:
            raise MalformedGraph6("truncated 18-bit size field")
        n = 0
        for b in data[1:4]:
            n = (n << 6) | (b - 63)
        k = 4
    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    body = data[k:]
    if len(body) != expected:
        raise MalformedGraph6(f"expected {expected} adjacency bytes for n={n}, got {len(body)}")
    edges = []
    bit = 0
    i, j = 0, 1
    for b in body:
        v = b - 63
        for s in range(5, -1, -1):
            if bit >= nbits:
                break
            if (v >> s) & 1:
                edges.append((i, j))
            bit += 1
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph(n, edges)


def read_graph6_lines(text: str) -> list[Graph]:
    return [graph6_decode(line) for line in text.splitlines() if line.strip()]


# --------------------------------------------------------------- planar_code


def planar_code_encode(graphs, header: bool = True) -> bytes:
    """Encode ``(graph, rotation)`` pairs; rotation lists are clockwise.

    Uses the one-byte format when every graph has < 256 vertices, else the
    two-byte little-endian variant.
    """
    graphs = list(graphs)
    wide = any(g.vertex_count >= 256 for g, _ in graphs)
    out = bytearray(PLANAR_CODE_HEADER if header else b"")
    for g, rot in graphs:
        if wide:
            out += b"\x00" + g.vertex_count.to_bytes(2, "little")
            for r in rot:
                for w in r:
                    out += (w + 1).to_bytes(2, "little")
                out += b"\x00\x00"
        else:
            out.append(g.vertex_count)
            for r in rot:
                out += bytes(w + 1 for w in r)
                out.append(0)
    return bytes(out)


def planar_code_decode(data: bytes) -> Iterator[tuple[Graph, list[list[int]]]]:
    """Yield ``(graph, rotation)`` for every record in a planar_code stream."""
    pos = 0
    if data.startswith(b">>planar_code"):
        end = data.find(b"<<")
        if end < 0:
            raise MalformedPlanarCode("unterminated header", 0)
        pos = end + 2
    N = len(data)
    while pos < N:
        start = pos
        n = data[pos]
        pos += 1
        width = 1
        if n == 0:
            if pos + 2 > N:
                raise MalformedPlanarCode("truncated wide vertex count", start)
            n = int.from_bytes(data[pos:pos + 2], "little")
            pos += 2
            width = 2
        rotation: list[list[int]] = []
        for v in range(n):
            nbrs: list[int] = []
            while True:
                if pos + width > N:
                    raise MalformedPlanarCode(f"truncated neighbour list of vertex {v + 1}", pos)
                w = data[pos] if width == 1 else int.from_bytes(data[pos:pos + 2], "little")
                pos += width
                if w == 0:
                    break
                if w > n:
                    raise MalformedPlanarCode(f"neighbour {w} exceeds vertex count {n}", pos - width)
                nbrs.append(w - 1)
            rotation.append(nbrs)
        edges = set()
        for v, nbrs in enumerate(rotation):
            if len(set(nbrs)) != len(nbrs) or v in nbrs:
                raise NonSimpleGraph(f"vertex {v + 1} has a loop or repeated neighbour (record at byte {start})")
            for w in nbrs:
                if v not in rotation[w]:
                    raise MalformedPlanarCode(f"edge {v + 1}-{w + 1} is not symmetric", start)
                edges.add((min(v, w), max(v, w)))
        yield Graph(n, edges), rotation


# -------------------------------------------------------------- certificates


def certificate_dict(
    pattern: Graph,
    host: Optional[Graph],
    image,
    pins=(),
    adjacency=(),
    **extra,
) -> dict:
    out = {
        "pattern": graph6_encode(pattern),
        "host": graph6_encode(host) if host is not None else None,
        "image": [int(x) for x in image],
        "pins": [[int(p), int(h)] for p, h in pins],
        "adjacency": [[int(p), int(h)] for p, h in adjacency],
    }
    out.update(extra)
    return out


def dumps(obj) -> str:
    """Deterministic JSON used for every emitted document."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
