"""Semi-equivelar maps on the torus: Archimedean tilings, their torus
quotients, vertex orbits and the supporting counting arguments."""

from .errors import TilerError
from .mapcore import FlagMap, build_from_faces, euler_characteristic, is_polyhedral
from .symbols import VertexSymbol, canonicalize, parse, semi_equivelar_type
from .tilings import NAMES, patch, template, template_for_type, validate_template
from .quotients import SublatticeBasis, enumerate_sublattices, torus_quotient
from .symmetry import automorphism_group, isomorphic, vertex_orbits
from .auxgraphs import auxiliary_graph, orbit_separator
from .census import census, find_sharp_witness
from .growth import grow_patch, growth_matches_template
from .diskcounts import disk_counts, forced_boundary, verify_lemmas
from .sublattice_props import delete_centers, insert_centers, u0_members, unique_neighbor_property

__version__ = "0.1.0"

__all__ = [
    "TilerError", "FlagMap", "build_from_faces", "euler_characteristic", "is_polyhedral",
    "VertexSymbol", "canonicalize", "parse", "semi_equivelar_type",
    "NAMES", "patch", "template", "template_for_type", "validate_template",
    "SublatticeBasis", "enumerate_sublattices", "torus_quotient",
    "automorphism_group", "isomorphic", "vertex_orbits",
    "auxiliary_graph", "orbit_separator", "census", "find_sharp_witness",
    "grow_patch", "growth_matches_template",
    "disk_counts", "forced_boundary", "verify_lemmas",
    "delete_centers", "insert_centers", "u0_members", "unique_neighbor_property",
]
