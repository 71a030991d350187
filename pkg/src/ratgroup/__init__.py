"""Asynchronous binary transducers and the rational group of the Cantor set."""

from .codes import complement, is_complete, normalize
from .cycles import (
    CycleReport,
    LipschitzReport,
    SCCInfo,
    accessible_states,
    analyze_cycles,
    is_oblivious,
    lipschitz_report,
    simple_cycles,
)
from .elements import (
    Element,
    bracket,
    compose,
    fix,
    fp,
    glue,
    identity,
    image_code,
    inverse,
    mover,
    pair,
    prefix_exchange,
    product,
    raw,
    small_support_factor,
    swap,
    x0,
)
from .errors import (
    DivergenceError,
    InitialResidueError,
    MachineError,
    NotInvertibleError,
    ParseError,
    PrefixCodeError,
    RationalError,
    SupportError,
)
from .expr import parse_expr
from .generators import GeneratorSpec, gen_element, gen_machine
from .normalization import (
    CanonicalForm,
    RestrictionResult,
    equal,
    lcp_from_state,
    make_onward,
    minimize,
    num_restrictions,
    probe_bijective,
    restriction,
    trim,
)
from .transducer import (
    Trajectory,
    Transducer,
    eval_prefix,
    parse,
    run,
    serialize,
    to_dot,
    validate,
)

__all__ = [
    "accessible_states",
    "analyze_cycles",
    "bracket",
    "CanonicalForm",
    "complement",
    "compose",
    "CycleReport",
    "DivergenceError",
    "Element",
    "equal",
    "eval_prefix",
    "fix",
    "fp",
    "gen_element",
    "gen_machine",
    "GeneratorSpec",
    "glue",
    "identity",
    "image_code",
    "InitialResidueError",
    "inverse",
    "is_complete",
    "is_oblivious",
    "lcp_from_state",
    "lipschitz_report",
    "LipschitzReport",
    "MachineError",
    "make_onward",
    "minimize",
    "mover",
    "normalize",
    "NotInvertibleError",
    "num_restrictions",
    "pair",
    "parse",
    "parse_expr",
    "ParseError",
    "prefix_exchange",
    "PrefixCodeError",
    "probe_bijective",
    "product",
    "RationalError",
    "raw",
    "restriction",
    "RestrictionResult",
    "run",
    "SCCInfo",
    "serialize",
    "simple_cycles",
    "small_support_factor",
    "SupportError",
    "swap",
    "to_dot",
    "Trajectory",
    "Transducer",
    "trim",
    "validate",
    "x0",
]

__version__ = "0.1.0"
