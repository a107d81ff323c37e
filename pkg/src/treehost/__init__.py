"""Universal host graphs for trees and outerplanar graphs, with checkable embeddings."""

from .errors import TreehostError
from .graph import EmbeddingMap, Graph, verify_embedding
from .kernel import BACKEND
from .trees import Tree

__all__ = ["BACKEND", "EmbeddingMap", "Graph", "Tree", "TreehostError", "verify_embedding"]
__version__ = "0.1.0"
