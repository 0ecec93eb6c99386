class InputError(ValueError):
    """Malformed or out-of-range input to a library operation."""


class CapError(InputError):
    """A request needs simplices above the stored dimension cap."""
