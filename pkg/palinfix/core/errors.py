# palinfix/core/errors.py
"""Exception hierarchy shared by every palinfix module.

Library code raises these; the batch layer in ``palinfix.batch`` catches
``PalinfixError`` and turns it into a logged message and an exit code.
"""


class PalinfixError(Exception):
    """Base class for all palinfix errors."""


class NotAPrefix(PalinfixError):
    """A word was expected to start (or end) with another word but does not."""


class InvalidSpec(PalinfixError):
    """A directive-function spec evaluates to a value violating the site constraint."""


class BeyondTable(InvalidSpec):
    """An explicit-table spec was evaluated past the end of its table."""

    def __init__(self, n: int, table_length: int):
        self.n = n
        self.table_length = table_length
        super().__init__(
            f"psi({n}) requested but the explicit table only covers 1..{table_length}"
        )


class NotAbundant(PalinfixError):
    """Consecutive palindromic-prefix lengths violate n_{i+1} <= 2 n_i + 1."""

    def __init__(self, i: int, n_i: int, n_next: int):
        self.i = i
        self.n_i = n_i
        self.n_next = n_next
        super().__init__(
            f"not abundant at i={i}: n_{i}={n_i}, n_{i + 1}={n_next} > {2 * n_i + 1}"
        )


class MissingLength(PalinfixError):
    """The length 2 n_i - n_{i+1} is not a palindromic-prefix length."""

    def __init__(self, i: int, wanted: int):
        self.i = i
        self.wanted = wanted
        super().__init__(f"step {i}: no palindromic prefix of length {wanted}")


class SeedMismatch(PalinfixError):
    """A seed word does not have the announced number of palindromic prefixes."""


class InvalidParameters(PalinfixError):
    """Numeric parameters outside the documented range."""


class NotPeriodic(PalinfixError):
    """An exact value was requested for a continued fraction without a period."""


class DomainError(PalinfixError):
    """An exact arithmetic operation left its domain (e.g. rho <= 1, mixed radicands)."""


class NonIncreasing(PalinfixError):
    """A length recurrence produced a non-increasing term."""

    def __init__(self, i: int, previous: int, value: int):
        self.i = i
        super().__init__(
            f"term {i + 1} = {value} does not exceed term {i} = {previous}"
        )


class DegenerateSequence(PalinfixError):
    """A length sequence has a zero term past its first index."""


class NotReduced(PalinfixError):
    """An operation that requires a reduced directive function got another one."""


class StreamExhausted(PalinfixError):
    """A finite word stream was asked for more letters than it holds."""

    def __init__(self, requested: int, available: int):
        self.requested = requested
        self.available = available
        super().__init__(
            f"requested a prefix of length {requested}, stream ends at {available}"
        )


class CodecError(PalinfixError):
    """Malformed JSON, CSV or text input."""
