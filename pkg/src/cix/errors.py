"""Exception hierarchy shared by the library and the command line front end."""


class CixError(Exception):
    """Base class for every error raised deliberately by this package."""


class RankMismatchError(CixError, ValueError):
    pass


class NotAnInvolutionError(CixError, ValueError):
    pass


class ElementParseError(CixError, ValueError):
    pass


class InconsistentSpecError(CixError, ValueError):
    pass


class InfeasibleWindowError(CixError, ValueError):
    """No element of the class fits in the requested label window."""


class ConnectedClassError(CixError, ValueError):
    """A disconnection certificate was requested for a connected class."""


class DisconnectedClassError(CixError, ValueError):
    """A diameter was requested for a disconnected class."""


class WindowTooLargeError(CixError, ValueError):
    """The window exceeds the default size budget and needs an explicit opt-in."""
