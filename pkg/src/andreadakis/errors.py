"""Exception hierarchy.

Every error carries a short machine-readable ``code`` that the CLI reports
in its JSON envelope.
"""


class AndreadakisError(Exception):
    code = "error"


class RankMismatch(AndreadakisError, ValueError):
    code = "rank-mismatch"


class IndexOutOfRange(AndreadakisError, ValueError):
    code = "index-out-of-range"


class NotInverse(AndreadakisError, ValueError):
    code = "not-inverse"


class NonUnit(AndreadakisError, ValueError):
    code = "non-unit"


class ParameterMismatch(AndreadakisError, ValueError):
    code = "parameter-mismatch"


class NotLie(AndreadakisError, ValueError):
    code = "not-lie"


class IdentityWord(AndreadakisError, ValueError):
    code = "identity-word"


class DepthExceedsTruncation(AndreadakisError, ValueError):
    code = "depth-exceeds-truncation"


class ZeroElement(AndreadakisError, ValueError):
    code = "zero-element"


class InvalidModulus(AndreadakisError, ValueError):
    code = "invalid-modulus"


class DimensionMismatch(AndreadakisError, ValueError):
    code = "dimension-mismatch"


class DepthTooLow(AndreadakisError, ValueError):
    code = "depth-too-low"


class TruncationTooSmall(AndreadakisError, ValueError):
    code = "truncation-too-small"


class TrivialSubgroup(AndreadakisError, ValueError):
    code = "trivial-subgroup"


class AllInnerUpToBudget(AndreadakisError, ValueError):
    code = "all-inner-up-to-budget"


class NotInSubgroupLevel(AndreadakisError, ValueError):
    code = "not-in-level"


class ParseError(AndreadakisError, ValueError):
    """Malformed word or automorphism text; ``line``/``column`` are 1-based."""

    code = "syntax-error"

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column
