"""Exception classes shared by the library and the command line."""


class InputError(ValueError):
    """Bad user input: unknown type, invalid rank or level, malformed weight."""


class ConsistencyError(RuntimeError):
    """An identity that must hold exactly failed.

    Raised when computed data contradicts a structural fact (fusion outputs
    that should be a singleton, orbit sizes, lattice membership). ``identity``
    names the failing check.
    """

    def __init__(self, identity: str, detail: str = ""):
        self.identity = identity
        self.detail = detail
        super().__init__(f"{identity}: {detail}" if detail else identity)
