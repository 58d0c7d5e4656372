class TripleGroupsError(Exception):
    """Base class for all errors raised by the package."""


class UnknownType(TripleGroupsError, KeyError):
    pass


class ExcludedType(TripleGroupsError, ValueError):
    """The type exists but its affine simple root is long (or it is A1~1)."""


class MismatchedType(TripleGroupsError, ValueError):
    pass


class NotInLattice(TripleGroupsError, ValueError):
    pass


class IsotropicRoot(TripleGroupsError, ValueError):
    pass


class UnknownGenerator(TripleGroupsError, KeyError):
    pass


class NotInGroup(TripleGroupsError, ValueError):
    """A linear map is not the image of any double affine Weyl group element."""


class NotAffine(TripleGroupsError, ValueError):
    pass


class UnsupportedKind(TripleGroupsError, ValueError):
    pass


class BadStep(TripleGroupsError, ValueError):
    def __init__(self, index: int, reason: str):
        super().__init__(f"step {index}: {reason}")
        self.index = index
        self.reason = reason
