from .parser import (
    BinOp,
    Gen,
    Identity,
    ImagUnit,
    Neg,
    Num,
    Pow,
    parse_operator_expr,
    pretty,
    subsystems_of,
)
from .scenario import (
    NamedExpr,
    Scenario,
    Subsystem,
    SubsystemLayout,
    embed,
    evaluate_expr,
    load_scenario,
    parse_scenario,
    scenario_from_dict,
)
from .spin import spin_generators

__all__ = [
    "BinOp",
    "Gen",
    "Identity",
    "ImagUnit",
    "NamedExpr",
    "Neg",
    "Num",
    "Pow",
    "Scenario",
    "Subsystem",
    "SubsystemLayout",
    "embed",
    "evaluate_expr",
    "load_scenario",
    "parse_operator_expr",
    "parse_scenario",
    "pretty",
    "scenario_from_dict",
    "spin_generators",
    "subsystems_of",
]
