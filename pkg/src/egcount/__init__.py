"""Exact counts and MCMC estimates for Markov equivalence classes of labeled DAGs."""

__version__ = "0.1.0"

from .counts import (EdagCountProvider, ExactRatio, count_cdags, count_dags, count_edags,
                     exact_cdag_dag_ratio, wright_conditions_report)
from .equivalence import (class_size, consistent_extension, cpdag_of_dag, is_edag,
                          is_essential_graph, v_structures)
from .estimator import estimate
from .graph import Dag, Pdag, canonical_key, decode_key, is_connected, skeleton, topological_order
from .mcmc import ChainConfig, MoveKind, run_chain, run_ensemble
from .oracle import census, enumerate_dags, enumerate_egs
