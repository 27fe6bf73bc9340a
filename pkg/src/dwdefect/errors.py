"""Exception hierarchy.

Every error carries a short stable ``code`` so the CLI and the tests can
refer to failures without matching on message text.
"""

from __future__ import annotations


class DwDefectError(Exception):
    code = "E_GENERIC"


class InvalidInput(DwDefectError, ValueError):
    code = "E_INVALID"


class NotReflexive(InvalidInput):
    code = "E_NOT_REFLEXIVE"


class NotTransitive(InvalidInput):
    code = "E_NOT_TRANSITIVE"


class InvalidPoset(InvalidInput):
    code = "E_INVALID_POSET"


class NotComposable(InvalidInput):
    code = "E_NOT_COMPOSABLE"


class WordTooLong(InvalidInput):
    code = "E_WORD_TOO_LONG"


class InfiniteOrderViolation(InvalidInput):
    code = "E_INFINITE_ORDER"


class ModulusMismatch(InvalidInput):
    code = "E_MODULUS_MISMATCH"


class NotARootOfUnity(InvalidInput):
    code = "E_NOT_ROOT"


class MissingGroupLabel(InvalidInput):
    code = "E_MISSING_GLABEL"


class DomainCoverageError(InvalidInput):
    code = "E_DOMAIN_COVERAGE"


class DimensionMismatch(InvalidInput):
    code = "E_DIMENSION"


class NotFlagLike(InvalidInput):
    code = "E_FLAG_LIKE"


class InvalidComplex(InvalidInput):
    code = "E_INVALID_COMPLEX"


class SideConflict(InvalidInput):
    code = "E_SIDE_CONFLICT"


class CyclicTournament(InvalidInput):
    code = "E_CYCLIC_TOURNAMENT"


class UnknownFaceConfiguration(InvalidInput):
    code = "E_FACE_CONFIGURATION"


class NonIntegerInvariant(DwDefectError, ArithmeticError):
    code = "E_NON_INTEGER_INVARIANT"


class NotApplicable(InvalidInput):
    code = "E_MOVE_NOT_APPLICABLE"


class StratumViolation(NotApplicable):
    code = "E_STRATUM_VIOLATION"


class SideStructureViolation(NotApplicable):
    code = "E_SIDE_STRUCTURE"


class DocumentError(InvalidInput):
    """Parse failure in a document, located by line/column or field path."""

    code = "E_DOCUMENT"

    def __init__(self, message: str, *, path: str | None = None,
                 line: int | None = None, column: int | None = None):
        self.path = path
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}, column {column}")
        if path is not None:
            where.append(f"at {path}")
        super().__init__(f"{message} ({'; '.join(where)})" if where else message)
