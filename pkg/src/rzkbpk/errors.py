"""Exception hierarchy shared across the toolkit."""


class DomainError(ValueError):
    """Input outside an operation's declared domain."""


class ContractError(RuntimeError):
    """A caller violated a structural precondition (not a protocol reject)."""


class CapacityError(ValueError):
    """Requested parameters exceed a profile or hard size limit."""


class WitnessError(ValueError):
    """A prover was invoked with a witness that does not satisfy its relation."""


class ExtractionError(RuntimeError):
    """Transcript fork does not satisfy the extractor's preconditions."""


class ProtocolError(RuntimeError):
    """Out-of-order or malformed protocol driving (harness bug, not a reject)."""


class ScheduleError(ValueError):
    """Invalid event ordering in a schedule."""
