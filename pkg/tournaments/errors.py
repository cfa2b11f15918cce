"""Errors raised by tournament constructions and searches."""


class TournamentError(ValueError):
    """Base class for every domain error."""


class InvalidConnectorError(TournamentError):
    """A connector lies outside {1..p} or a connector set is malformed."""


class VertexRangeError(TournamentError):
    """A vertex index or interval is out of range."""


class SizeLimitError(TournamentError):
    """A tournament is too large for the requested representation or search."""


class NotAnAutomorphismError(TournamentError):
    """A permutation does not preserve the arcs of the tournament."""


class RigidTournamentError(TournamentError):
    """An operation that requires a nontrivial automorphism group got a rigid tournament."""


class LiteralFormatError(TournamentError):
    """A textual tournament or connector literal could not be parsed."""
