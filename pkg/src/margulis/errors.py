"""Exception hierarchy shared by all modules."""


class MargulisError(Exception):
    """Base class; every error carries a short machine-readable ``code``."""

    code = "error"

    def to_record(self):
        return {"error": self.code, "type": type(self).__name__, "message": str(self)}


class NotHyperbolic(MargulisError):
    code = "not_hyperbolic"


class DegeneratePair(MargulisError):
    code = "degenerate_pair"


class DegenerateEndpoints(DegeneratePair):
    code = "degenerate_endpoints"


class SingularSolve(MargulisError):
    code = "singular_solve"


class NonReducedWord(MargulisError, ValueError):
    code = "non_reduced_word"


class PingPongViolation(MargulisError):
    code = "pingpong_violation"


class NotOnLeaf(MargulisError):
    code = "not_on_leaf"

    def __init__(self, residual):
        super().__init__(f"point is off the leaf by {residual:.3e}")
        self.residual = residual


class ZeroDisplacement(MargulisError):
    code = "zero_displacement"


class NoOrbitFound(MargulisError):
    code = "no_orbit_found"


class NotCovered(MargulisError):
    code = "not_covered"


class ParseError(MargulisError):
    code = "parse_error"


class ValidationError(MargulisError):
    code = "validation_error"
