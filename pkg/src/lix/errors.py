"""Exception hierarchy shared by all modules."""


class LixError(Exception):
    """Base class for every error raised by the package."""


class SchemaError(LixError):
    pass


class DuplicateId(LixError):
    pass


class NonPositiveWeight(LixError):
    pass


class MixedSpaces(LixError):
    pass


class NotADifferential(LixError):
    pass


class ArityMismatch(LixError):
    pass


class WrongDegree(LixError):
    pass


class PageBeyondCurvatureBound(LixError):
    pass


class PreconditionViolated(LixError):
    pass


class RelationCheckFailed(LixError):
    def __init__(self, report):
        super().__init__(f"relations fail: {len(report.violations)} violation(s)")
        self.report = report


class StasheffViolation(LixError):
    def __init__(self, word, weight, defect):
        super().__init__(f"Stasheff identity fails on word {word!r} (weight {weight})")
        self.word = word
        self.weight = weight
        self.defect = defect


class TruncationMismatch(LixError):
    pass


class NotAMorphism(LixError):
    pass


class NotTransferredStructure(LixError):
    pass


class Obstructed(LixError):
    """A lifting step met a nonzero class on the relevant page."""

    def __init__(self, k, obstruction):
        super().__init__(f"obstruction at filtration {k}")
        self.k = k
        self.obstruction = obstruction


class HypothesisFailed(LixError):
    """The solver cannot run, or ran into an obstruction.

    ``reason`` is ``"CurvatureTooLow"`` or ``"Obstructed"``.
    """

    def __init__(self, reason, k=None, obstruction=None, steps=()):
        super().__init__(f"{reason} at k={k}")
        self.reason = reason
        self.k = k
        self.obstruction = obstruction
        self.steps = tuple(steps)
