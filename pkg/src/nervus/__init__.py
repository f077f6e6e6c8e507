"""Discrete spatial representations: Chu-space nerves, Sorkin posets, refinement,
incidence-algebra forms and exact simplicial homology, with fractal test beds."""

from .complex import (SimplicialComplex, SimplicialMap, betti, boundary_complex, check_simplicial_map,
                      coboundary_complex, complex_from_maximal, find_isomorphism, homology_map, induced_chain_map)
from .config import Caps
from .context import (ChuSpace, ChuTransform, cech_nerve, dual, enumerate_splittings, induced_cech_map,
                      induced_vietoris_map, validate_transform, vietoris_nerve)
from .errors import (CapExceededError, MalformedInputError, NervusError, NotSimplicialError, ValidationError)
from .fractafold import (OdeParams, Tower, cantor_context, cantor_tower, carpet_complex, rossler_cloud,
                         solenoid_tower, sponge_complex, star_cover, tower_homology)
from .geometry import PointCloud, cech_ball_complex, connecting_epsilon, min_enclosing_ball, rips_complex
from .incidence import (ChainElement, IncidenceElement, hasse_epimorphism, path_algebra, zapatrin_cohomology,
                        zapatrin_d, zapatrin_matrices)
from .linalg import F2, Q
from .poset import Poset, face_poset, order_complex, sorkin_quotient
from .refinement import (check_refinement_map, check_refinement_relation, maximal_refinement_relation,
                         sorkin_refinement_map)

__version__ = "0.1.0"

__all__ = ["SimplicialComplex", "SimplicialMap", "betti", "boundary_complex", "check_simplicial_map",
           "coboundary_complex", "complex_from_maximal", "find_isomorphism", "homology_map",
           "induced_chain_map", "Caps", "ChuSpace", "ChuTransform", "cech_nerve", "dual",
           "enumerate_splittings", "induced_cech_map", "induced_vietoris_map", "validate_transform",
           "vietoris_nerve", "CapExceededError", "MalformedInputError", "NervusError", "NotSimplicialError",
           "ValidationError", "OdeParams", "Tower", "cantor_context", "cantor_tower", "carpet_complex",
           "rossler_cloud", "solenoid_tower", "sponge_complex", "star_cover", "tower_homology", "PointCloud",
           "cech_ball_complex", "connecting_epsilon", "min_enclosing_ball", "rips_complex", "ChainElement",
           "IncidenceElement", "hasse_epimorphism", "path_algebra", "zapatrin_cohomology", "zapatrin_d",
           "zapatrin_matrices", "F2", "Q", "Poset", "face_poset", "order_complex", "sorkin_quotient",
           "check_refinement_map", "check_refinement_relation", "maximal_refinement_relation",
           "sorkin_refinement_map"]
