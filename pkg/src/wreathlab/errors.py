"""Exception hierarchy shared by all wreathlab modules."""


class WreathlabError(Exception):
    """Base class for every error raised by the library."""


class InvalidTable(WreathlabError):
    pass


class OrderCapExceeded(WreathlabError):
    pass


class SearchCapExceeded(WreathlabError):
    pass


class MixedParents(WreathlabError):
    pass


class NotNormal(WreathlabError):
    pass


class NotComposable(WreathlabError):
    pass


class NotAHomomorphism(WreathlabError):
    pass


class InvalidAction(WreathlabError):
    pass


class NotSurjective(WreathlabError):
    def __init__(self, message, missed=()):
        super().__init__(message)
        self.missed = tuple(missed)


class NonCommonBase(WreathlabError):
    pass


class NotASolution(WreathlabError):
    pass


class DomainMismatch(WreathlabError):
    pass


class TowerInvalid(WreathlabError):
    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = tuple(violations)


class FactorizationFailed(WreathlabError):
    pass


class HypothesisFails(WreathlabError):
    pass


class TransferFailure(WreathlabError):
    """A transferred family failed a conclusion that must hold; never expected."""

    def __init__(self, message, record=None):
        super().__init__(message)
        self.record = record


class UnknownSuite(WreathlabError):
    pass


class ParseError(WreathlabError):
    def __init__(self, message, line=None):
        self.line = line
        self.bare = message
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
