"""Exception types shared across the package."""


class CertRealError(Exception):
    """Base class for every error raised by certreal."""


class ExponentOverflow(CertRealError):
    """A dyadic exponent left the supported range.

    This is a hard internal error: it indicates a precision budget went
    wrong somewhere, not a value the caller should try to interpret.
    """


class ResourceExhausted(CertRealError):
    """A precision, term-count or iteration budget was exceeded."""


class InvalidCertificate(CertRealError):
    """An apartness certificate failed revalidation against its number."""


class DomainUndetermined(CertRealError):
    """The interval backend could not decide a domain sign condition yet.

    Carries the precision that was attempted; the caller should refine
    and retry rather than treat this as a domain violation.
    """

    def __init__(self, precision, message=None):
        self.precision = precision
        super().__init__(message or
                         f"domain sign condition undecided at precision "
                         f"2^-{precision}; refine and retry")


class LangError(CertRealError):
    """Base class for expression-language errors."""


class ParseError(LangError):
    """Syntax error, with the byte position where it was detected."""

    def __init__(self, position, message):
        self.position = position
        super().__init__(f"{message} (at byte {position})")


class RelationUnsupported(ParseError):
    """A relation other than a strict inequality appeared in a query.

    Equality and non-strict comparisons of exact reals cannot be
    semi-decided by finite approximation, so they are rejected at parse
    time instead of looping forever at run time.
    """


class DomainUnverifiable(LangError):
    """A domain side condition could not be discharged within budget.

    Inconclusive, not a proof of violation: the operand may still be
    apart from zero at some precision beyond ``max_precision``.
    """

    def __init__(self, span, max_precision, message=None):
        self.span = span
        self.max_precision = max_precision
        super().__init__(message or
                         f"could not certify domain side condition up to "
                         f"precision 2^-{max_precision} "
                         f"(bytes {span[0]}..{span[1]})")


class DomainViolation(LangError):
    """A domain side condition provably fails (e.g. ln of a negative).

    ``evidence`` is the certificate or enclosure that witnesses the
    violation.
    """

    def __init__(self, span, evidence, message=None):
        self.span = span
        self.evidence = evidence
        super().__init__(message or
                         f"domain side condition provably violated "
                         f"(bytes {span[0]}..{span[1]}): {evidence}")


class ConformanceError(CertRealError):
    """The two evaluation backends produced incompatible results.

    This should never happen; if it does it is an engine bug, and the
    payload carries everything needed to reproduce it.
    """

    def __init__(self, detail):
        self.detail = detail
        super().__init__(f"backend disagreement: {detail}")
