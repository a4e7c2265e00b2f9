from .builtins import BUILTINS, builtin_documents, builtin_scenario, builtin_scenarios
from .report import render_report, report_to_dict

__all__ = [
    "BUILTINS",
    "builtin_documents",
    "builtin_scenario",
    "builtin_scenarios",
    "render_report",
    "report_to_dict",
]
