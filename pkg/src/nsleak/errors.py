"""Exception types shared across the package."""


class NsleakError(Exception):
    """Base class for errors raised by nsleak."""


class InputError(NsleakError, ValueError):
    """Malformed input: unknown variable, bad file, invalid parameter."""


class IncompatibleEvidenceError(NsleakError, LookupError):
    """Conditioning on an assignment that no tuple of the relation realizes."""


class SearchCapError(NsleakError):
    """An exhaustive search would exceed its configured size cap."""
