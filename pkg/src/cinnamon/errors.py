"""Exception types shared across the platform."""


class CinnamonError(Exception):
    """Base class for all platform errors."""


class ValidationError(CinnamonError):
    """An input violated a documented invariant.

    The message always names the first violated invariant (and the offending
    entity where there is one), so callers can surface it directly.
    """


class ScenarioError(CinnamonError):
    """A scenario file could not be parsed or failed schema validation."""


class AuthError(CinnamonError):
    """Unknown user or wrong credential (deliberately indistinguishable)."""


class AuthorizationError(CinnamonError):
    """The acting role is not granted the requested operation."""


class NotFoundError(CinnamonError):
    """A referenced entity does not exist."""


class DuplicateError(CinnamonError):
    """An entity with the same unique key already exists."""
