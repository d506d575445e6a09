"""Exception types shared across the package."""


class GroupCryptError(Exception):
    """Base class for all errors raised by groupcrypt."""


class SizeLimit(GroupCryptError):
    """An exhaustive search was asked to run beyond its configured bound."""


class GeneratorOutOfRange(GroupCryptError, ValueError):
    pass


class InconsistentPresentation(GroupCryptError):
    """Collection did not terminate within its step budget."""


class PlatformLawViolation(GroupCryptError):
    pass


class DegeneratePlatform(GroupCryptError):
    """The public data yields a trivial multilinear value."""


class MalformedSignature(GroupCryptError, ValueError):
    pass


class DealerCertificationFailure(GroupCryptError):
    pass


class CommitmentMismatch(GroupCryptError):
    pass


class InvalidReveal(GroupCryptError):
    pass


class OverflowRisk(GroupCryptError, ValueError):
    """Plaintext values or circuit depth can exceed the ring modulus."""


class OracleExhausted(GroupCryptError):
    """A brute-force oracle ran out of budget before reaching a definite answer."""
