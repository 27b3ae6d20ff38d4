"""Exception hierarchy.

Every error carries a ``witness`` tuple naming the first offending indices in
lexicographic order, so a diagnostic can be replayed against the object that
produced it.
"""


class OrbitLimitError(Exception):
    fields = ()

    def __init__(self, *witness, detail=None):
        self.witness = tuple(witness)
        self.detail = detail
        super().__init__(self.describe())

    @property
    def name(self):
        return type(self).__name__

    def describe(self):
        args = ", ".join(
            f"{k}={v!r}" for k, v in zip(self.fields, self.witness)
        ) if self.fields else ", ".join(repr(v) for v in self.witness)
        msg = f"{self.name}({args})"
        if self.detail:
            msg += f": {self.detail}"
        return msg

    def as_dict(self):
        out = {"error": self.name, "witness": list(self.witness)}
        if self.detail:
            out["detail"] = self.detail
        return out


# --- algebra -----------------------------------------------------------------

class AlgebraError(OrbitLimitError, ValueError):
    pass


class ShapeError(AlgebraError):
    """Table has the wrong dimensions."""


class NotClosed(AlgebraError):
    fields = ("g", "h")


class NoIdentity(AlgebraError):
    pass


class NoInverse(AlgebraError):
    fields = ("g",)


class NotAssociative(AlgebraError):
    fields = ("g", "h", "k")


class NotHomomorphism(AlgebraError):
    fields = ("g", "h")


class RangeError(AlgebraError):
    """An entry of a map or action table lies outside its codomain."""


class IdentityAxiomFails(AlgebraError):
    fields = ("x",)


class CompatibilityFails(AlgebraError):
    fields = ("g", "h", "x")


# --- systems -----------------------------------------------------------------

class SystemError_(OrbitLimitError, ValueError):
    pass


class NotPartialOrder(SystemError_):
    pass


class NotDirected(SystemError_):
    fields = ("a", "b")


class IdentityBondMissing(SystemError_):
    fields = ("alpha",)


class CompositionMismatch(SystemError_):
    fields = ("alpha", "beta", "gamma")


class NotEquivariant(SystemError_):
    fields = ("levels", "g", "x")


# --- limits ------------------------------------------------------------------

class LimitError(OrbitLimitError, ValueError):
    pass


class DepthUnavailable(LimitError):
    fields = ("requested", "available")


class EmptyLevel(LimitError):
    fields = ("level",)


class NotACone(LimitError):
    fields = ("alpha", "beta", "s")


class TowerMismatch(LimitError):
    pass


class DepthMismatch(LimitError):
    fields = ("left", "right")


# --- commutation -------------------------------------------------------------

class NoLeastElement(OrbitLimitError, ValueError):
    pass


class HypothesesNotCertified(OrbitLimitError, ValueError):
    pass


class InternalInconsistency(OrbitLimitError, AssertionError):
    """Raised when an invariant guaranteed by earlier validation fails."""


# --- serialization -----------------------------------------------------------

class ParseError(OrbitLimitError, ValueError):
    fields = ("location",)


class ValidationError(OrbitLimitError, ValueError):
    """A parsed object failed validation; ``location`` is the field path."""

    fields = ("location",)

    def __init__(self, location, cause):
        self.cause = cause
        super().__init__(location, detail=str(cause))
