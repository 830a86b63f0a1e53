"""Exception types shared across the package."""


class DpMstError(Exception):
    """Base class for all dpmst errors."""


class InvalidParam(DpMstError):
    """A parameter is outside its documented domain."""


class DisconnectedGraph(DpMstError):
    """The input graph is not connected; no spanning tree exists."""


class UnknownEdge(DpMstError):
    """An edge id does not exist in the graph."""


class EmptyCandidates(DpMstError):
    """A selection mechanism was invoked on an empty candidate set."""


class AlreadyActive(DpMstError):
    """Attempt to insert an edge that is already active in the queue."""


class NotActive(DpMstError):
    """Attempt to delete an edge that is not active in the queue."""


class UnknownGroup(DpMstError):
    """A group key is not present in the queue directory."""


class RankOutOfRange(DpMstError):
    """A rank-select query exceeded the number of active edges."""
