"""Exception types shared across the workbench."""


class EPWBError(Exception):
    """Base class for workbench errors."""


class SpecError(EPWBError, ValueError):
    """A ring, module, group or scenario spec is malformed."""


class AxiomError(SpecError):
    """Raw tables violate an algebraic axiom.

    ``axiom`` names the first violated axiom, ``witness`` holds the
    offending element indices.
    """

    def __init__(self, axiom, witness=()):
        self.axiom = axiom
        self.witness = tuple(witness)
        msg = f"axiom violated: {axiom}"
        if self.witness:
            msg += f" (at {self.witness})"
        super().__init__(msg)


class ResourceBoundError(EPWBError):
    """An enumeration would exceed a configured bound."""

    def __init__(self, what, bound, needed=None):
        self.what = what
        self.bound = bound
        self.needed = needed
        msg = f"{what} exceeds bound {bound}"
        if needed is not None:
            msg += f" (needs {needed})"
        super().__init__(msg)


class NotChainRingError(EPWBError):
    def __init__(self, first, second):
        self.first = first
        self.second = second
        super().__init__(
            f"ring is not a chain ring: ideals {list(first.elements)} and "
            f"{list(second.elements)} are incomparable"
        )


class PreconditionError(EPWBError):
    """An operation was called outside its stated precondition."""
