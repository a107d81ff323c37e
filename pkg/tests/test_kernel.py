import os
import random
import subprocess
import sys

from conftest import random_graph

from treehost import _kernel_py, kernel
from treehost.subgraph import subgraph_embed
from treehost.trees import random_tree


def test_fallback_selected_by_env():
    env = dict(os.environ, TREEHOST_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import treehost; print(treehost.BACKEND)"], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_backends_agree(monkeypatch):
    r = random.Random(12)
    cases = []
    for _ in range(150):
        host = random_graph(r.randint(5, 12), r.uniform(0.2, 0.7), r)
        cases.append((random_tree(r.randint(2, 8), r.random()).underlying, host))
    fast = [subgraph_embed(p, h) for p, h in cases]
    monkeypatch.setattr(kernel, "search", _kernel_py.search)
    slow = [subgraph_embed(p, h) for p, h in cases]
    assert fast == slow
    assert any(m is None for m in fast) and any(m is not None for m in fast)
