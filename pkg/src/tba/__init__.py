"""Finite-model workbench for topological Boolean algebras.

Elements are sets of points over a small domain, operators are lookup tables
over all elements, and everything else (conditions, topological
inter-definitions, logics of formal inconsistency, quantifiers) is built on
those two types.
"""

from .conditions import CheckReport, ConditionId, check, holds_tables
from .errors import CapacityError, DomainError, EvaluationError, FormulaSyntaxError, TBAError
from .formula import Formula, Sequent, parse, parse_formula, parse_sequent, to_text
from .lattice import Element, Family, PointDomain, big_join, big_meet
from .logic import Model, consequence, eval_formula, negation_property, recovery_theorems, search, valid
from .operators import Operator, TransformKind, cube_check, enumerate_operators, transform
from .quantifiers import Constant, QuantSort, SortFunction, Unrestricted, Varying, lift_up, pi, sigma
from .topology import OperatorRole, Relation, derive, finite_topologies

__version__ = "0.1.0"

__all__ = [
    "CapacityError", "CheckReport", "ConditionId", "Constant", "DomainError", "Element",
    "EvaluationError", "Family", "Formula", "FormulaSyntaxError", "Model", "Operator",
    "OperatorRole", "PointDomain", "QuantSort", "Relation", "Sequent", "SortFunction",
    "TBAError", "TransformKind", "Unrestricted", "Varying", "big_join", "big_meet", "check",
    "consequence", "cube_check", "derive", "enumerate_operators", "eval_formula",
    "finite_topologies", "holds_tables", "lift_up", "negation_property", "parse",
    "parse_formula", "parse_sequent", "pi", "recovery_theorems", "search", "sigma",
    "to_text", "transform", "valid",
]  # fmt: skip
