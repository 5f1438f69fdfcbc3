"""Exception types shared by the pure-Python and compiled kernels."""


class GammaWaldError(Exception):
    """Base class for every error raised by this package."""


class SpecError(GammaWaldError):
    """Malformed input: unknown names, bad indices, schema violations.

    ``field`` names the offending field (dotted path) when known.
    """

    def __init__(self, message, field=None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field


class CompositionError(GammaWaldError):
    """A pair of morphisms is not composable or has no table entry."""


class OutOfWindow(GammaWaldError):
    """A tensor, wedge or pushout leaves the finite presentation."""


class BudgetExceeded(GammaWaldError):
    """An enumeration would exceed its explicit resource budget."""


class PreconditionError(GammaWaldError):
    """An operation was called outside its domain (e.g. not a cofibration)."""


class OverlappingComposite(GammaWaldError):
    """Composite in Gamma(C) whose psi-blocks overlap inside one phi(i).

    Witness: source index ``i`` and the two middle indices ``j``, ``j2``
    (0-based) whose psi-images intersect.
    """

    def __init__(self, i, j, j2):
        super().__init__(f"psi-blocks of {j} and {j2} overlap inside phi({i})")
        self.i, self.j, self.j2 = i, j, j2


class UntypedComposite(GammaWaldError):
    """Composite in Gamma(C) that would have to drop a non-unit factor.

    Raised when some j in phi(i) has psi(j) empty while the union over phi(i)
    is non-empty and B_j is not the unit: T(g_j1, ..., g_jp) then needs a map
    B_j -> e that the data does not provide.
    """

    def __init__(self, i, j):
        super().__init__(f"dropping factor {j} of phi({i}) changes the tensor")
        self.i, self.j = i, j


class MediationError(GammaWaldError):
    """Base for failed universal-property searches."""


class NoMediatingMorphism(MediationError):
    pass


class AmbiguousMediatingMorphism(MediationError):
    def __init__(self, message, candidates=()):
        super().__init__(message)
        self.candidates = tuple(candidates)
