"""Exception hierarchy shared by every subsystem."""


class EdgeFaceError(Exception):
    """Base class for all errors raised by this package."""


# embeddings


class EmbeddingError(EdgeFaceError):
    pass


class InconsistentAdjacency(EmbeddingError):
    pass


class LoopOrMultiEdge(EmbeddingError):
    pass


class NonPlanarEmbedding(EmbeddingError):
    pass


class BridgeDeletion(EmbeddingError):
    pass


class UnknownEdge(EmbeddingError, KeyError):
    pass


class WouldCreateMultiEdge(EmbeddingError):
    pass


class NotEligibleCutVertex(EmbeddingError):
    pass


# colourings


class ColouringError(EdgeFaceError):
    pass


class UnknownElement(ColouringError, KeyError):
    pass


class NotNice(ColouringError):
    pass


class NoFreeColour(ColouringError):
    """No colour is available for an element that should always have one."""


# structural analysis


class PreconditionViolated(EdgeFaceError):
    """Input graph is not simple, connected and of maximum degree at most 8."""


class DegreeTooLow(EdgeFaceError):
    pass


class FaceTooSmall(EdgeFaceError):
    pass


class Disconnected(PreconditionViolated):
    pass


# solver


class SurgeryPreconditionFailed(EdgeFaceError):
    pass


class ScriptBlocked(EdgeFaceError):
    """An extension script could not find a valid recolouring."""

    def __init__(self, config_id, reason=""):
        super().__init__(f"{config_id}: {reason}" if reason else config_id)
        self.config_id = config_id
        self.reason = reason


class InternalExtensionFailure(EdgeFaceError):
    """Both the extension script and the exhaustive fallback failed.

    ``graph`` holds the instance being coloured, for triage.
    """

    def __init__(self, message="", graph=None):
        super().__init__(message)
        self.graph = graph


# documents


class DocumentError(EdgeFaceError):
    pass


class DocumentSyntaxError(DocumentError):
    def __init__(self, message, line, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class SemanticError(DocumentError):
    pass
