"""Ducci sequences on Z_m^n: simulation, closed-form periods for n = 3, identity checks."""

from .coefficients import (
    CoeffRow,
    CoeffTriple,
    b_expansion,
    check_doubling,
    check_mod6_relation,
    coeff_row,
    coeff_triple,
    compose_triples,
)
from .core import (
    BudgetExceeded,
    ModTuple,
    ModulusMismatch,
    TupleParseError,
    ducci_step,
    parse_tuple,
    rotate,
    scale,
)
from .ntheory import (
    Factorization,
    euler_phi,
    euler_sum_check,
    factorize,
    fermat_quotient_probe,
    mult_order_2,
)
from .orbit import (
    OrbitInfo,
    TransitionGraph,
    basic_len_per,
    build_graph,
    kernel,
    orbit_info,
    predecessors,
    sequence,
)
from .period import PeriodReport, formula_length, formula_period, sweep, verify

__version__ = "0.1.0"
