"""Built-in scenarios, written as scenario documents in the file format.

Expected C grids are reference values kept verbatim, signs included, so that any
mismatch with the computed i[B_i, A_j] shows up in the report.
"""

from ..errors import InputError
from ..opexpr import scenario_from_dict

MAX_L = 20

_S2 = "(Sx(1)+Sx(2))^2 + (Sy(1)+Sy(2))^2 + (Sz(1)+Sz(2))^2"
_SZ = "Sz(1)+Sz(2)"
_QUBITS2 = [{"kind": "spin", "s": 0.5}] * 2
_QUBITS3 = [{"kind": "spin", "s": 0.5}] * 3


def _obs(*pairs):
    return [{"name": name, "expr": expr} for name, expr in pairs]


def _bell():
    a = _obs(("XX", "X(1)*X(2)"), ("YY", "Y(1)*Y(2)"))
    variants = {
        "x": (
            _obs(("X1", "X(1)"), ("X2", "X(2)")),
            [["0", "2*Z(1)*Y(2)"], ["0", "2*Y(1)*Z(2)"]],
        ),
        "y": (
            _obs(("Y1", "Y(1)"), ("Y2", "Y(2)")),
            [["2*Z(1)*X(2)", "0"], ["2*X(1)*Z(2)", "0"]],
        ),
        "z": (
            _obs(("Z1", "Z(1)"), ("Z2", "Z(2)")),
            [["-2*Y(1)*X(2)", "2*X(1)*Y(2)"], ["-2*X(1)*Y(2)", "2*Y(1)*X(2)"]],
        ),
    }
    return [
        {
            "name": f"bell:{key}",
            "subsystems": _QUBITS2,
            "A": a,
            "B": b,
            "expected_C": grid,
            "bipartition": [[1], [2]],
        }
        for key, (b, grid) in variants.items()
    ]


def _ghz():
    a = _obs(("XYY", "X(1)*Y(2)*Y(3)"), ("YXY", "Y(1)*X(2)*Y(3)"), ("YYX", "Y(1)*Y(2)*X(3)"))
    variants = {
        "1": (
            _obs(("X1", "X(1)"), ("Y2", "Y(2)"), ("Y3", "Y(3)")),
            [
                ["0", "-2*Z(1)*X(2)*Y(3)", "-2*Z(1)*Y(2)*X(3)"],
                ["0", "2*Y(1)*Z(2)*Y(3)", "0"],
                ["0", "0", "2*Y(1)*Y(2)*Z(3)"],
            ],
        ),
        "2": (
            _obs(("Y1", "Y(1)"), ("X2", "X(2)"), ("Y3", "Y(3)")),
            [
                ["2*Z(1)*Y(2)*Y(3)", "0", "0"],
                ["-2*X(1)*Z(2)*Y(3)", "0", "-2*Y(1)*Z(2)*X(3)"],
                ["0", "0", "2*Y(1)*Y(2)*Z(3)"],
            ],
        ),
        "3": (
            _obs(("Y1", "Y(1)"), ("Y2", "Y(2)"), ("X3", "X(3)")),
            [
                ["2*X(1)*Y(2)*Y(3)", "0", "0"],
                ["0", "2*Y(1)*Z(2)*Y(3)", "0"],
                ["-2*X(1)*Y(2)*Z(3)", "-2*Y(1)*X(2)*Z(3)", "0"],
            ],
        ),
    }
    return [
        {
            "name": f"ghz:{key}",
            "subsystems": _QUBITS3,
            "A": a,
            "B": b,
            "expected_C": grid,
            "bipartition": [[1], [2, 3]],
        }
        for key, (b, grid) in variants.items()
    ]


def _two_electron():
    return [{
        "name": "two_electron",
        "subsystems": _QUBITS2,
        "A": _obs(("S2", _S2), ("Sz", _SZ)),
        "B": _obs(("sz1", "Sz(1)"), ("sz2", "Sz(2)")),
        "expected_C": [
            ["-2*(Sy(1)*Sx(2) - Sx(1)*Sy(2))", "0"],
            ["-2*(-Sx(1)*Sy(2) + Sy(1)*Sx(2))", "0"],
        ],
        "bipartition": [[1], [2]],
    }]


def _spin_orbit(l=1):
    if isinstance(l, bool) or not isinstance(l, int) or not 0 <= l <= MAX_L:
        raise InputError(f"spin_orbit needs an integer 0 <= l <= {MAX_L}, got {l!r}")
    return [{
        "name": f"spin_orbit(l={l})",
        "subsystems": [{"kind": "spin", "s": l}, {"kind": "spin", "s": 0.5}],
        "A": _obs(("J2", _S2), ("Jz", _SZ)),
        "B": _obs(("lz", "Sz(1)"), ("sz", "Sz(2)")),
        "expected_C": [
            ["2*(Sy(2)*Sx(1) - Sx(2)*Sy(1))", "0"],
            ["2*(Sx(2)*Sy(1) - Sy(2)*Sx(1))", "0"],
        ],
        "bipartition": [[1], [2]],
    }]


def _plus_product():
    return [{
        "name": "plus_product",
        "subsystems": _QUBITS2,
        "A": _obs(("X1", "X(1)"), ("X2", "X(2)")),
        "B": _obs(("Z1", "Z(1)"), ("Z2", "Z(2)")),
        "bipartition": [[1], [2]],
    }]


BUILTINS = {
    "bell": (_bell, "2 qubits, A = (XX, YY) Bell basis, B = single-qubit X, Y, Z pairs (3 variants)"),
    "ghz": (_ghz, "3 qubits, A = (XYY, YXY, YYX) GHZ basis, B = the three local triples (3 variants)"),
    "two_electron": (_two_electron, "2 spin-1/2, A = (S^2, S_z) coupled basis, B = (s_z1, s_z2)"),
    "spin_orbit": (_spin_orbit, "spin-l x spin-1/2, A = (j^2, j_z), B = (l_z, s_z); --l sets l (default 1)"),
    "plus_product": (_plus_product, "2 qubits, A = (X1, X2) product basis, B = (Z1, Z2): criterion counterexample"),
}


def builtin_documents(name, l=1):
    if name not in BUILTINS:
        raise InputError(f"unknown builtin {name!r}; choose from {', '.join(BUILTINS)}")
    build, _ = BUILTINS[name]
    return build(l) if name == "spin_orbit" else build()


def builtin_scenarios(name, l=1):
    """All scenarios bundled under a builtin name (bell and ghz have three)."""
    _, description = BUILTINS.get(name, (None, ""))
    return [scenario_from_dict(doc, description=description) for doc in builtin_documents(name, l)]


def builtin_scenario(name, l=1, variant=None):
    """A single builtin scenario; ``variant`` picks e.g. 'x' for bell:x."""
    scenarios = builtin_scenarios(name, l)
    if variant is None:
        if len(scenarios) > 1:
            raise InputError(f"builtin {name!r} has several variants; pass one of "
                             + ", ".join(s.name.split(":")[1] for s in scenarios))
        return scenarios[0]
    for s in scenarios:
        if s.name == f"{name}:{variant}":
            return s
    raise InputError(f"builtin {name!r} has no variant {variant!r}")
