import os

DEFAULT_MAX_VERTICES = 5_000_000


def max_vertices() -> int:
    """Vertex cap for materialized graphs, from ``TREEHOST_MAX_VERTICES``."""
    raw = os.environ.get("TREEHOST_MAX_VERTICES")
    if not raw:
        return DEFAULT_MAX_VERTICES
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"TREEHOST_MAX_VERTICES must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError("TREEHOST_MAX_VERTICES must be positive")
    return value


def check_cap(vertex_count: int, what: str = "graph") -> None:
    from .errors import ResourceLimit

    cap = max_vertices()
    if vertex_count > cap:
        raise ResourceLimit(f"{what} needs {vertex_count} vertices, cap is {cap}")
