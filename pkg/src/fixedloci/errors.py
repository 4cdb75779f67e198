"""Exception types shared across the library."""


class FixedLociError(Exception):
    """Base class for all library errors."""


class DimMismatch(FixedLociError):
    pass


class NotInjective(FixedLociError):
    """The lattice map has a nontrivial kernel."""


class TorsionCokernel(FixedLociError):
    """The cokernel has torsion, so the free-action setup fails at torus level."""


class FreeActionViolated(FixedLociError):
    """A map that the free-action hypothesis forces to be unimodular is not."""


class EmptyStableLocus(FixedLociError):
    pass


class NotUnstable(FixedLociError):
    """An optimal destabilizer was requested for a semi-stable support.

    On the semi-stable boundary the optimizing ray need not be unique, so the
    library refuses to pick one.
    """


class TooLarge(FixedLociError):
    """A brute-force guard was exceeded."""


class ZeroDimensionVector(FixedLociError):
    pass


class ValidationError(FixedLociError):
    """Problem data failed schema or semantic validation."""
