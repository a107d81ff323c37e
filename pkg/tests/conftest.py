import itertools
import random

from hypothesis import HealthCheck, settings

from treehost.graph import Graph

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_graph(n, p, rng):
    return Graph(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p])


def brute_embeds(pattern, host, pins=()):
    """Exhaustive oracle: does any injection pattern -> host preserve edges?"""
    pin = dict(pins)
    for image in itertools.permutations(range(host.vertex_count), pattern.vertex_count):
        if any(image[p] != h for p, h in pin.items()):
            continue
        if all(host.has_edge(image[a], image[b]) for a, b in pattern.edges()):
            return True
    return False


def rng(seed=0):
    return random.Random(seed)


ACCEPTANCE = []
"""(criterion, passed, detail) lines recorded by test_acceptance.py."""


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
