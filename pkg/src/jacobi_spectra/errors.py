"""Exception types shared by the computational modules and the CLI."""


class SpectraError(Exception):
    """Base class for all errors raised by this package."""


class PoleAt(SpectraError):
    """A resolvent-type quantity was requested at (or too close to) a pole."""

    def __init__(self, location, z=None):
        self.location = location
        self.z = z
        msg = f"evaluation point lies on the pole at {location!r}"
        if z is not None:
            msg += f" (z={z!r})"
        super().__init__(msg)


class DivisionNearZero(SpectraError):
    """A quotient formula hit a denominator below its relative threshold."""


class HypothesisViolated(SpectraError):
    """The preconditions of a theorem check are not satisfied.

    ``hypothesis`` holds a short machine-readable tag naming the failed
    condition, e.g. ``"endpoint-common"`` or ``"theta-one"``.
    """

    def __init__(self, hypothesis, detail=""):
        self.hypothesis = hypothesis
        self.detail = detail
        super().__init__(f"{hypothesis}: {detail}" if detail else hypothesis)


class TheoremViolation(SpectraError):
    """A computed witness contradicts a statement that should hold."""


class ParseError(SpectraError):
    """Malformed configuration file."""

    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class ValidationError(SpectraError):
    """Well-formed configuration that violates a scenario invariant."""

    def __init__(self, invariant, detail=""):
        self.invariant = invariant
        super().__init__(f"{invariant}: {detail}" if detail else invariant)
