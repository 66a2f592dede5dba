"""Inertial frames as categories.

Galilean and Lorentz boosts between inertial frames form indiscrete
categories (``Gal`` and ``Lor``); this package builds them over finite frame
spaces, composes boosts with their Thomas rotation, verifies limits of
finite diagrams and checks the ``c -> infinity`` functor into ``Gal``.
"""

from ._config import get_tolerance, set_tolerance
from .diagrams import (
    Cone,
    Diagram,
    IndexCategory,
    LimitReport,
    build_index,
    cone_from_vertex,
    is_cone,
    is_limit,
    no_privileged_frame,
    survey_limits,
)
from .errors import (
    EmbeddingError,
    LorcatError,
    NotComposableError,
    SceneError,
    SuperluminalError,
    UnknownFrameError,
)
from .extended import ExtendedCategory, ExtendedMorphism, ExtendedObject, extended_compose, extended_hom_count_witness
from .frames import (
    AxiomReport,
    Frame,
    FrameSpace,
    GalMorphism,
    LorMorphism,
    check_category_axioms,
    compose,
    hom,
    inverse,
)
from .functors import (
    ConvergenceTable,
    FunctorMap,
    L_on_morphism,
    M_functor,
    check_adjunction,
    check_functor_laws,
    check_limit_preservation,
    limit_functor,
    limit_scan,
    pair_spaces,
)
from .kinematics import (
    BoostDecomposition,
    boost_apply,
    boost_matrix,
    classical_add,
    decompose_lorentz,
    einstein_add,
    galilean_apply,
    galilean_matrix,
    gyration,
    interval,
    lorentz_factor,
    thomas_angle,
)
from .scene import Scene, parse_scene
from .vecmat import Event

__version__ = "0.1.0"
