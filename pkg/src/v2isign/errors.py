"""Exception types shared across the protocol modules."""


class ProtocolError(Exception):
    """Base class for protocol-level failures."""


class ParseError(ProtocolError):
    """Wire bytes do not decode to a well-formed record."""


class RegistrationError(ProtocolError):
    """Key material received during registration failed its validity check."""


class TraceError(ProtocolError):
    """Pseudonym unmasking failed its integrity check (wrong key or forged ID)."""
