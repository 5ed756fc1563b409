"""General concept lattices: single-pass construction and implication checking."""

from .algebra import (
    Alphabet,
    AttrFn,
    LiteralClause,
    conj,
    disj,
    evaluate,
    format_cnf,
    format_dnf,
    irreducible_covers,
    leq,
    neg,
    parse_expr,
    to_cnf,
    to_dnf,
    to_fn,
)
from .context import (
    ContextQuotient,
    DiscernibleClass,
    FormalContext,
    attribute_derive,
    box,
    common_attributes,
    common_objects,
    derive,
    diamond,
    object_derive,
    parse_context,
    quotient,
    read_context,
    to_burmeister,
    to_csv,
)
from .degeneracy import DegeneracyReport, degeneracy_report, referential_context, restrict
from .implication import (
    ImplicationVerdict,
    allowable,
    check_rule,
    check_rules,
    closure,
    equivalent,
    fcl_implication,
    rsl_implication,
)
from .lattice import GclStructure, GeneralConcept, build, to_dot, to_json
from .masks import ExtentMask
from .oracle import OracleReport, enumerate_mstar, verify
from .sublattice import (
    ClassicalConcept,
    GeneralizedIntent,
    cgrsl_intent,
    fcl_concepts,
    gfcl_intent,
    grsl_intent,
    rsl_concepts,
)

__version__ = "0.1.0"
