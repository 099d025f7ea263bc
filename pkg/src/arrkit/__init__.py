"""Exact computations with central hyperplane arrangements over Q."""
from .arrangement import (Arrangement, ArrangementError, Hyperplane, NotAFlat, apply_linear_map, boolean,
                          essentialize, is_generic, localize, restrict)
from .chambers import (ChamberCone, PreconditionError, TriangleWitness, enumerate_chambers,
                       find_simple_triangle, is_simplicial, zaslavsky_count)
from .criteria import (FreeProbe, ModularChain, NicePartition, chain_partition, criteria_report, find_nice_partition,
                       free_probe, is_modular, is_supersolvable)
from .family import (ParamArrangement, exceptional_parameters, simple_triangle_certificate, triangle_family,
                     triangle_member)
from .kernels import BACKEND
from .lattice import (CharPoly, Flat, IntersectionLattice, build_lattice, charpoly, lattice_isomorphic,
                      whitney_charpoly)
from .roots import (Root, RootIdeal, RootSystem, enumerate_ideals, family_ideal, ideal_arrangement,
                    ideal_from_generators, positive_roots, root_leq, weyl_arrangement)

__version__ = "0.1.0"
