"""Exception hierarchy for lorcat."""


class LorcatError(Exception):
    """Base class for all library errors."""


class SuperluminalError(LorcatError, ValueError):
    """A relativistic velocity has magnitude >= c."""


class EmbeddingError(SuperluminalError):
    """A classical frame space cannot be embedded at the requested c."""


class SingularMatrixError(LorcatError, ValueError):
    pass


class ZeroAxisError(LorcatError, ValueError):
    pass


class NotLorentzError(LorcatError, ValueError):
    """Matrix does not preserve the Minkowski form."""


class NonOrthochronousError(LorcatError, ValueError):
    pass


class UnknownFrameError(LorcatError, KeyError):
    pass


class NotComposableError(LorcatError, ValueError):
    pass


class DanglingEndpointError(LorcatError, ValueError):
    pass


class ExplosionError(LorcatError, ValueError):
    """Index presentation has more morphism classes than the cap allows."""


class SceneError(LorcatError, ValueError):
    """Scene file could not be parsed or violates an invariant.

    ``locus`` names the offending field (for example ``frames[2].velocity``)
    or a ``line N`` position for JSON syntax errors.
    """

    def __init__(self, message, locus=None):
        self.locus = locus
        super().__init__(f"{locus}: {message}" if locus else message)
