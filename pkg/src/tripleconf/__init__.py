"""Dense triple systems over finite abelian groups and the configurations they contain."""

from tripleconf.errors import (
    BudgetExceeded,
    ConfigurationNotFound,
    InvalidIndex,
    InvalidOperand,
    InvalidParameter,
    InvalidSpecification,
    NoQuadruples,
    ParseError,
    ValidationError,
)
from tripleconf.group import GroupElement, GroupSpec, make_group, parse_group
from tripleconf.triples import TripleSystem, full_system, random_system, restrict
from tripleconf.quadruples import (
    GoodQuadruple,
    ProductVector,
    QuadrupleIndex,
    disjoint,
    disjoint_subfamily,
    enumerate_good_quadruples,
    is_good_quadruple,
    product_vector,
    q_max,
)
from tripleconf.finder import (
    Configuration,
    SearchParams,
    element_disjoint,
    find_configuration,
    required_triples,
    verify_configuration,
)
from tripleconf.hypergraph import (
    Hypergraph3,
    contains_config,
    from_triple_system,
    max_edges_spanned,
    spanned_triples,
)

__version__ = "0.1.0"
