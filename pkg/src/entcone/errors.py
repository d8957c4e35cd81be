"""Exception types raised across the package.

All of them derive from :class:`EntconeError`, itself a ``ValueError``, so
callers that only care about bad input can catch one class.
"""


class EntconeError(ValueError):
    pass


class IndexOfEmptySet(EntconeError):
    pass


class PartyOutOfRange(EntconeError):
    pass


class InvalidPermutation(EntconeError):
    pass


class DimensionMismatch(EntconeError):
    pass


class NegativeCoefficient(EntconeError):
    pass


class UnsupportedPartyCount(EntconeError):
    pass


class NonPointedCone(EntconeError):
    pass


class ZeroVector(EntconeError):
    pass


class ModelInvalid(EntconeError):
    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("invalid hypergraph model: " + "; ".join(self.problems))


class InvalidCoarseMap(EntconeError):
    pass


class NotSurjective(InvalidCoarseMap):
    pass


class LengthMismatch(InvalidCoarseMap):
    pass


class InvalidArity(EntconeError):
    pass


class UnknownFixture(EntconeError):
    pass


class InvalidStateSpec(EntconeError):
    pass


class ParseError(EntconeError):
    pass
