"""Exception hierarchy shared by every module."""


class TreehostError(Exception):
    """Base class for all errors raised by treehost."""


class InvalidPin(TreehostError, ValueError):
    pass


class MalformedGraph6(TreehostError, ValueError):
    pass


class MalformedPlanarCode(TreehostError, ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class NonSimpleGraph(TreehostError, ValueError):
    pass


class DivisibilityError(TreehostError, ValueError):
    pass


class ResourceLimit(TreehostError, RuntimeError):
    pass


class UnknownAnchor(TreehostError, KeyError):
    pass


class AllocationInfeasible(TreehostError, RuntimeError):
    pass


class CapacityExceeded(TreehostError, ValueError):
    pass


class SizeMismatch(TreehostError, ValueError):
    pass


class InvalidParams(TreehostError, ValueError):
    pass


class NotMaximalOuterplanar(TreehostError, ValueError):
    pass


class NotOuterplanar(TreehostError, ValueError):
    pass


class EmbeddingFailed(TreehostError, RuntimeError):
    pass


class Exhausted(TreehostError, LookupError):
    pass
