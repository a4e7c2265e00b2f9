"""Human-readable and JSON renderings of criterion reports."""

import json

import numpy as np


def _num(x):
    x = float(x)
    return 0.0 if x == 0 else x


def _grid(a):
    return [[_num(x) for x in row] for row in np.asarray(a)]


def _labels(t):
    return [_num(x) for x in t]


def _status(status):
    return {
        "commuting": bool(status.commuting),
        "complete": bool(status.complete),
        "duplicates": [_labels(t) for t in status.degenerate_label_groups],
        "max_commutator_norm": _num(status.max_commutator_norm),
    }


def _state(sv):
    d = sv.distribution
    out = {
        "a_labels": _labels(sv.a_labels),
        "amplitudes": [[_num(z.real), _num(z.imag)] for z in sv.state],
        "expectation_max": _num(sv.expectation_max),
        "action_norms": _grid(sv.action_norms),
        "condition_b_literal": sv.condition_b_literal,
        "condition_b_operational": sv.condition_b_operational,
        "criterion_verdict": sv.criterion_verdict.value,
        "oracle_verdict": sv.oracle_verdict.value,
        "distribution": [] if d is None else [{"b_labels": _labels(lab), "p": _num(p)} for lab, p in d.support],
        "marginals": [] if d is None else [
            [{"value": _num(v), "p": _num(p)} for v, p in sorted(m.items())] for m in d.marginals
        ],
        "mutual_information": [] if d is None else _grid(d.pairwise_mutual_information),
        "total_correlation": None if d is None else _num(d.total_correlation),
        "schmidt_rank": sv.schmidt_rank,
        "schmidt_coefficients": None if sv.schmidt_coefficients is None else [
            _num(x) for x in sv.schmidt_coefficients
        ],
        "agreement": sv.agreement,
    }
    return out


def report_to_dict(report):
    return {
        "scenario": report.scenario,
        "a_names": list(report.a_names),
        "b_names": list(report.b_names),
        "a_csco": _status(report.a_status),
        "b_csco": _status(report.b_status),
        "c_norms": _grid(report.commutator.entry_norms),
        "condition_a_rows": list(report.condition_a_rows),
        "expected_c_match": None if report.expected_c_match is None else [
            list(row) for row in report.expected_c_match
        ],
        "states": [_state(sv) for sv in report.states],
        "uncertainty_ok": bool(report.uncertainty_ok),
        "warnings": list(report.warnings),
    }


def _fmt_labels(labels):
    return "(" + ", ".join(f"{x:+.6g}" if x else "0" for x in labels) + ")"


def _status_line(kind, names, status):
    if not status.commuting:
        verdict = f"NOT commuting (max ||[O_a,O_b]|| = {status.max_commutator_norm:.3e}), NOT a CSCO"
    elif status.complete:
        verdict = "commuting, complete CSCO"
    else:
        dups = ", ".join(_fmt_labels(t) for t in status.degenerate_label_groups)
        verdict = f"commuting but NOT a CSCO (repeated labels {dups})"
    return f"  {kind}-set ({', '.join(names)}): {verdict}"


def render_text(report):
    lines = [f"Scenario: {report.scenario}"]
    lines.append(_status_line("A", report.a_names, report.a_status))
    lines.append(_status_line("B", report.b_names, report.b_status))

    width = max(len(n) for n in report.a_names + report.b_names) + 2
    width = max(width, 10)
    lines.append("  ||C_ij||_F  (rows B_i, columns A_j):")
    lines.append(" " * (4 + width) + "".join(n.rjust(width) for n in report.a_names))
    for name, row in zip(report.b_names, report.commutator.entry_norms):
        lines.append("    " + name.ljust(width) + "".join(f"{x:{width}.4g}" for x in row))
    rows = ", ".join("T" if r else "F" for r in report.condition_a_rows)
    lines.append(f"  condition (a): rows [{rows}] -> {'satisfied' if report.condition_a else 'NOT satisfied'}")
    if report.expected_c_match is not None:
        bad = [
            f"({i + 1},{j + 1})"
            for i, row in enumerate(report.expected_c_match)
            for j, ok in enumerate(row)
            if not ok
        ]
        lines.append("  expected C: " + ("matches" if not bad else "MISMATCH at " + " ".join(bad)))

    lines.append("  states:")
    lines.append(
        f"    {'#':>3}  {'A labels':<24} {'max|<C>|':>9} {'(b)':>4} {'op':>4}  "
        f"{'criterion':<20} {'oracle':<14} {'schmidt':>7}  agree"
    )
    for sv in report.states:
        agree = {True: "yes", False: "NO", None: "-"}[sv.agreement]
        rank = "-" if sv.schmidt_rank is None else str(sv.schmidt_rank)
        lines.append(
            f"    {sv.index:>3}  {_fmt_labels(sv.a_labels):<24} {sv.expectation_max:9.2e} "
            f"{'T' if sv.condition_b_literal else 'F':>4} {'T' if sv.condition_b_operational else 'F':>4}  "
            f"{sv.criterion_verdict.value:<20} {sv.oracle_verdict.value:<14} {rank:>7}  {agree}"
        )
        if sv.distribution is not None:
            support = ", ".join(f"{_fmt_labels(lab)}: {p:.6g}" for lab, p in sv.distribution.support)
            lines.append(f"         outcomes {support}")

    bad = report.disagreements
    if bad:
        lines.append(f"  DISAGREEMENT: criterion and oracle differ on {len(bad)} state(s): "
                     + ", ".join(str(sv.index) for sv in bad))
    worst = min((s.slack for s in report.uncertainty_samples), default=0.0)
    lines.append(f"  uncertainty relation: {'holds' if report.uncertainty_ok else 'VIOLATED'} "
                 f"on {len(report.uncertainty_samples)} samples (min slack {worst:.3e})")
    for w in report.warnings:
        lines.append(f"  warning: {w}")
    return "\n".join(lines) + "\n"


def render_report(report, fmt="text"):
    """Render one report, or a list of reports, as text or JSON."""
    if isinstance(report, (list, tuple)):
        if fmt == "json":
            return json.dumps([report_to_dict(r) for r in report], indent=2) + "\n"
        return "\n".join(render_text(r) for r in report)
    if fmt == "json":
        return json.dumps(report_to_dict(report), indent=2) + "\n"
    if fmt == "text":
        return render_text(report)
    raise ValueError(f"unknown format {fmt!r}")
