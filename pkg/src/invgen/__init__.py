"""Invariably generating graphs of PSL(2,q) and its direct powers."""

from invgen.gf import GFContext, gf_make, gf_for_q, prime_power_split
from invgen.psl2 import (
    ClassLabel,
    ClassEntry,
    ClassInventory,
    inventory,
    enumerate_psl2,
    psl2_class_of,
    psl2_mul,
    psl2_inv,
    psl2_order,
)
from invgen.structure import (
    SubgroupClass,
    Psi2Table,
    maximal_subgroup_classes,
    build_profiles,
    psi2_structural,
    verify_2covering,
    profile_census,
)
from invgen.autorbits import AutAction, OrbitPartition, aut_action, beta, beta_fast
from invgen.oracle import OracleSession, OracleCapError, oracle_psi2, oracle_isolated_vertices
from invgen.iggraph import (
    IGGraph,
    BoundReport,
    GraphCapError,
    lambda_graph,
    lambda_power,
    lambda_summary,
    components,
    is_bipartite,
    diameter,
    clique_number,
    chromatic_number,
    component_bound,
    n_lower_bound_report,
    gamma_upper,
)

__all__ = [
    "GFContext", "gf_make", "gf_for_q", "prime_power_split",
    "ClassLabel", "ClassEntry", "ClassInventory", "inventory",
    "enumerate_psl2", "psl2_class_of", "psl2_mul", "psl2_inv", "psl2_order",
    "SubgroupClass", "Psi2Table", "maximal_subgroup_classes",
    "build_profiles", "psi2_structural", "verify_2covering", "profile_census",
    "AutAction", "OrbitPartition", "aut_action", "beta", "beta_fast",
    "OracleSession", "OracleCapError", "oracle_psi2", "oracle_isolated_vertices",
    "IGGraph", "BoundReport", "GraphCapError",
    "lambda_graph", "lambda_power", "lambda_summary",
    "components", "is_bipartite", "diameter", "clique_number", "chromatic_number",
    "component_bound", "n_lower_bound_report", "gamma_upper",
]
