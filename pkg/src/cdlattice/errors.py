"""Exception hierarchy.

Everything raised on bad user input derives from :class:`CDLatticeError`, so
the CLI can map it to exit code 1.  :class:`InternalInvariantError` is kept
separate: it means a theorem-backed check failed on a valid group, i.e. a bug.
"""


class CDLatticeError(Exception):
    pass


class InvalidPermutation(CDLatticeError):
    pass


class ClosureExceedsCap(CDLatticeError):
    pass


class NotAGroup(CDLatticeError):
    def __init__(self, axiom, witness, message=None):
        self.axiom = axiom
        self.witness = tuple(witness)
        super().__init__(message or f"{axiom} fails at {self.witness}")


class NotNormal(CDLatticeError):
    def __init__(self, conjugator, message=None):
        self.conjugator = conjugator
        super().__init__(message or f"subgroup is not normal: conjugation by element {conjugator} moves it")


class LatticeExceedsCap(CDLatticeError):
    pass


class NotComparable(CDLatticeError):
    pass


class PreconditionUnmet(CDLatticeError):
    pass


class InvalidSpec(CDLatticeError):
    pass


class SpecSyntaxError(InvalidSpec):
    """Malformed group expression; ``offset`` is the 0-based column."""

    def __init__(self, message, text, offset):
        self.text = text
        self.offset = offset
        super().__init__(f"{message} at offset {offset}: {text!r}")


class InternalInvariantError(Exception):
    pass
