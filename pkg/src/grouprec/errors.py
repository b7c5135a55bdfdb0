"""Exception hierarchy shared by every module of the package."""


class GroupRecError(ValueError):
    """Base class for all input and precondition errors."""


# graph construction and validation
class SelfLoop(GroupRecError):
    pass


class UnknownNode(GroupRecError):
    pass


class DuplicateNodeId(GroupRecError):
    pass


class ZeroMultiplicity(GroupRecError):
    pass


class InvalidSpec(GroupRecError):
    pass


class EmptyGroup(GroupRecError):
    pass


# rewrites
class PreconditionMismatch(GroupRecError):
    pass


class VoterTarget(GroupRecError):
    pass


class WouldSelfLoop(GroupRecError):
    pass


class NotInGroup(GroupRecError):
    pass


class NotNonvoter(GroupRecError):
    pass


class NoInfluencers(GroupRecError):
    pass


class UnsupportedInfluencer(GroupRecError):
    pass


class NonTerminating(GroupRecError):
    pass


# axiom checkers
class SpecOutOfScope(GroupRecError):
    pass


class GroupTooLarge(GroupRecError):
    pass


# impossibility witness
class InvalidParams(GroupRecError):
    pass


class MalformedWitness(GroupRecError):
    pass
