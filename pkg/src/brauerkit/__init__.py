"""Graded Azumaya algebras, Brauer-Wall groups and C2 descent spectral sequences."""
from .errors import (BrauerKitError, ConsistencyError, Indeterminate, InvalidInput)
from .exactalg import CoeffRing, FinAbGroup, IntMatrix, smith_normal_form, subquotient
from .graded import (Grading, GradedAlgebra, GradedModule, Z2, base_change, end_algebra,
                     koszul_swap, matrix_algebra, opposite, tensor_algebras)
from .azumaya import hochschild, homogeneous_unit_degrees, is_azumaya, morita_reduce_field
from .brauerwall import (QuadraticDatum, bw_class_of, bw_group, bw_multiply, get_profile,
                         half_quaternion, quaternion_algebra)
from .c2coh import C2Module, ShortExactSequence, cohomology, les_connecting, operation_group_bound
from .specseq import (Arrow, Cell, HiddenExtension, ObstructionSlot, Page, Region, Window,
                      assemble_degree, e_infinity, make_sequence, obstruction_groups, turn_page)

__version__ = "0.1.0"

__all__ = [
    "BrauerKitError", "ConsistencyError", "Indeterminate", "InvalidInput",
    "CoeffRing", "FinAbGroup", "IntMatrix", "smith_normal_form", "subquotient",
    "Grading", "GradedAlgebra", "GradedModule", "Z2", "base_change", "end_algebra",
    "koszul_swap", "matrix_algebra", "opposite", "tensor_algebras",
    "hochschild", "homogeneous_unit_degrees", "is_azumaya", "morita_reduce_field",
    "QuadraticDatum", "bw_class_of", "bw_group", "bw_multiply", "get_profile",
    "half_quaternion", "quaternion_algebra",
    "C2Module", "ShortExactSequence", "cohomology", "les_connecting", "operation_group_bound",
    "Arrow", "Cell", "HiddenExtension", "ObstructionSlot", "Page", "Region", "Window",
    "assemble_degree", "e_infinity", "make_sequence", "obstruction_groups", "turn_page",
]
