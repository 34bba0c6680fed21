"""manyval: exact decision of finite many-valued matrix logics built from
Godel chains with involution and Lukasiewicz chains."""

from .algebra import (
    ChainAlgebra, Kind, OrderFilter, ProductMatrix, Subuniverse,
    enumerate_mv_subchains, enumerate_subuniverses, ft_chain,
    generate_subuniverse, godel_chain, matrix, mv_chain,
)
from .analysis import (
    ClassificationReport, classify_ideal, classify_saturated,
    find_separating_consequence, is_paraconsistent, lfi_witness,
    regression_incomparabilities, validates_explosion,
    verify_saturated_product,
)
from .catalog import (
    CatalogIndex, LogicDescriptor, build_LT, build_L_exp, build_x_product,
    compute_X, enumerate_godel_catalog, enumerate_luk_catalog, named,
    submatrix_embedding,
)
from .entail import (
    Assignment, DEFAULT_BUDGET, EntailmentVerdict, StandardFilterClass,
    check_valid, decide_standard, entails_degree_preserving, entails_family,
    entails_matrix, entails_product_def, evaluate, semantically_equal,
    value_vector, verify_counterexample,
)
from .errors import (
    BudgetExceededError, InputError, ParseError, UnknownLogicError,
    UnsupportedConnectiveError,
)
from .formula import Formula, TableConn, parse, parse_formula_set, print_formula
from .terms import (
    axiom_builders, consistency_godel, consistency_luk, delta_set_translation,
    discriminator_term, ft_hash, ft_star, godel_from_mv_terms, luk3_term,
    luk4_term, single_value_characterizer, star_translation, tilde_table_conn,
    tuple_characterizer,
)

__version__ = "0.1.0"
