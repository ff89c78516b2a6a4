"""Exception types shared across the package."""


class SvmvError(Exception):
    """Base class for all package errors."""


class FormatError(SvmvError):
    """Malformed textual input: node paths, graph files, CLI values."""


class NumberingError(SvmvError):
    """Port numbering unusable for execution."""


class DegreeBoundError(SvmvError):
    """Graph exceeds the machine's declared degree bound."""


class MachineContractError(SvmvError):
    """A state machine violated its contract: stopping states must be fixed
    points of the transition and must emit no message on any port."""


class DidNotHaltError(SvmvError):
    """Outputs were requested from a run that never reached a global stop."""


class ResourceLimitError(SvmvError):
    """A configured resource cap (nodes, pairs, parameter range) was hit."""


class BallExhaustedError(ResourceLimitError):
    """A bisimilarity probe reached past the materialised part of a graph.
    Raised instead of returning a possibly wrong answer."""


class SignatureCollisionError(SvmvError):
    """Two neighbours of one node carried identical (state, out-port)
    signatures after the gathering phase, so the set-reception simulation
    cannot recover message multiplicities on this instance."""


class InternalInconsistencyError(SvmvError):
    """A search exceeded a bound that should be unreachable."""
