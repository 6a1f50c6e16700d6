"""Hypersets as pointed graphs under the Anti-Foundation Axiom."""

from .bisim import (
    Partition,
    SystemMap,
    bisimilar,
    canonicalize,
    collapse_map,
    naive_bisim,
    quotient,
    refine_partition,
)
from .equations import parse_equations, parse_system
from .errors import (
    AfaError,
    CyclicInput,
    DuplicateName,
    EmptyRegistry,
    NoRoot,
    NotASystemMap,
    ParseError,
    RankTooLarge,
    UnknownNode,
    UnknownVariable,
)
from .events import (
    Event,
    EventKind,
    SecondOrderEvent,
    UniverseRegistry,
    VRKind,
    classify_event,
    classify_universe,
    embed_check,
    register_event,
    second_order,
)
from .hyperset import (
    HyperSet,
    decorate,
    decoration,
    empty,
    equals,
    insert,
    is_member,
    is_wellfounded,
    members,
    mostowski_collapse,
    omega,
    pair,
    singleton,
    solve_equations,
    unfold,
    union,
    von_neumann,
)
from .modal import (
    And,
    Bot,
    Box,
    Delta,
    Dia,
    Neg,
    Or,
    Top,
    char_formula,
    modally_equivalent,
    normalize,
    parse_formula,
    satisfies,
)
from .system import System, build_system, children, export_dot, render_equations

__version__ = "0.1.0"
