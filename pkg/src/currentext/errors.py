"""Exception hierarchy shared across the package.

Two broad families matter for the CLI exit-code contract: InputError
(malformed or invalid input data) and PropertyError (a mathematically
checked condition failed on valid input). ResourceCeilingError and
InternalConsistencyError sit outside both.
"""


class CurrentExtError(Exception):
    """Base class for all package errors."""


class InputError(CurrentExtError):
    """Invalid input: bad documents, bad algebra data, bad usage."""


class InvalidAlgebraError(InputError):
    """Structure constants violate the algebra axioms."""


class DocumentError(InputError):
    """A JSON algebra document does not match the schema."""


class CatalogError(InputError):
    """Unknown catalog algebra name."""


class NonUnitalError(InputError):
    """Operation requires a unital commutative algebra."""


class DimensionMismatchError(InputError):
    """Operand dimensions do not match; distinct from 'no solution'."""


class PropertyError(CurrentExtError):
    """A checked mathematical property failed (CLI exit code 2)."""


class NotACocycleError(PropertyError):
    def __init__(self, triple, defect):
        self.triple = triple
        self.defect = defect
        super().__init__(f"not a cocycle: identity fails on triple {triple}")


class NotInDerivedAlgebraError(PropertyError):
    def __init__(self, defect_coordinates):
        self.defect_coordinates = tuple(defect_coordinates)
        super().__init__(
            "not in derived algebra; defect class coordinates "
            f"{[str(c) for c in self.defect_coordinates]}"
        )


class NotSymmetricError(PropertyError):
    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"bilinear form is not symmetric at basis pair {pair}")


class NotInvariantError(PropertyError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(
            "bilinear form is not derivation invariant; witness "
            f"(derivation {witness[0]}, pair ({witness[1]}, {witness[2]}))"
        )


class NotDiagonalError(PropertyError):
    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"cocycle is not diagonal; violating basis pair {pair}")


class BadPrimitiveError(PropertyError):
    def __init__(self, index, pair, defect):
        self.index = index
        self.pair = pair
        self.defect = defect
        super().__init__(
            f"primitive {index} is not a coboundary primitive of the "
            f"restricted cocycle; defect at pair {pair}"
        )


class NoLocalUnitError(PropertyError):
    def __init__(self, support):
        self.support = support
        super().__init__(f"no idempotent local unit for support {sorted(support)}")


class FibreNotSemisimpleError(PropertyError):
    def __init__(self):
        super().__init__("fibre not semisimple (Killing form is degenerate)")


class ResourceCeilingError(CurrentExtError):
    """A cochain space would exceed the configured size ceiling."""

    def __init__(self, needed, ceiling):
        self.needed = needed
        self.ceiling = ceiling
        super().__init__(
            f"cochain space of dimension {needed} exceeds ceiling {ceiling}"
        )


class InternalConsistencyError(CurrentExtError):
    """An internally verified identity failed; indicates a bug, not bad data."""
