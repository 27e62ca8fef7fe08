"""Command-line entry point.

    intrinsic-spin verify  [--scenario PATH] [--seed N] [--tol NAME=VALUE ...] [--format json|csv|md] [--out PATH]
    intrinsic-spin compare [...same options...]
    intrinsic-spin em      [...same options...]

Exit status: 0 when every check passes, 1 when a check fails, 2 for a
malformed scenario or command line.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import io
import sys
from typing import Any

import numpy as np

from . import em_coupling as em
from . import intrinsicality as it
from . import minkowski as mk
from . import suites
from .poincare_rep import MomentumSpinState, OnShellMomentum
from .report import SCHEMA_VERSION, CheckReport, dumps
from .scenario import Scenario, ScenarioError, load_scenario
from .spin_observables import ObserverFrame

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _scenario_summary(sc: Scenario) -> dict[str, Any]:
    return {
        "spin": str(sc.spin),
        "mass": sc.mass,
        "momenta": [list(p) for p in sc.momenta],
        "boosts": [b.label() for b in sc.boosts],
        "field": None if sc.field is None else {"E": list(sc.field.E), "B": list(sc.field.B), "alpha": sc.field.alpha},
        "seed": sc.seed,
        "random_samples": sc.random_samples,
        "tolerances": dict(sorted(sc.tolerances.items())),
    }


def _momenta(sc: Scenario) -> list[OnShellMomentum]:
    return [OnShellMomentum(sc.mass, p) for p in sc.momenta]


def _parse_state(sc: Scenario) -> MomentumSpinState:
    if sc.state is None:
        return suites.spin_x_state(sc.spin, OnShellMomentum.rest(sc.mass))
    terms = []
    try:
        for term in sc.state["terms"]:
            amp = [complex(a[0], a[1]) if isinstance(a, list) else complex(a) for a in term["amplitude"]]
            terms.append((OnShellMomentum(sc.mass, tuple(float(x) for x in term["p"])), amp))
        return MomentumSpinState.from_terms(sc.spin, terms)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ScenarioError(f"state: {exc}") from None


def run_verify(sc: Scenario) -> list[CheckReport]:
    rng = np.random.default_rng(sc.seed)
    s, m = sc.spin, sc.mass
    momenta = _momenta(sc) + suites.random_momenta(rng, sc.random_samples, m)
    boosts = [b.matrix() for b in sc.boosts] + [suites.random_lorentz(rng) for _ in range(sc.random_samples)]
    reports = [suites.casimir_check([s], momenta, sc.tol("casimir"))]
    reports += suites.tensor_identity_checks([s], momenta, sc.tol("identity"))
    reports.append(suites.covariance_check(
        [(s, L, k) for L in boosts[:len(sc.boosts)] for k in _momenta(sc)]
        + [(s, suites.random_lorentz(rng), k) for k in momenta], sc.tol("covariance")))
    reports.append(suites.sigma_closed_form_check([s], momenta, sc.tol("closed_form")))
    reports.append(suites.comoving_su2_check([s], momenta, sc.tol("su2")))
    frames = [ObserverFrame.lab()] + [ObserverFrame.from_lorentz(L) for L in boosts]
    reports.append(suites.reconstruction_check(
        [(s, k, frames[i % len(frames)]) for i, k in enumerate(momenta)]
        + [(s, k, ObserverFrame.comoving(k)) for k in momenta], sc.tol("reconstruction")))

    sampling = it.SamplingSpec(n=32, seed=sc.seed)
    h, ctol = sc.tol("step"), sc.tol("classical")
    for prop in suites.classical_calibration_properties(m):
        for check in (it.translation_invariance_check, it.hyperplane_invariance_check):
            rep = check(prop, sampling, h, ctol)
            rep.check = f"{rep.check}[{prop.name}]"
            reports.append(rep)
    nogo = it.threevector_nogo_check(lambda v: np.zeros(4), sampling, ctol)
    nogo.check = "threevector_nogo[null]"
    reports.append(nogo)

    states = [suites.random_state(rng, s, _momenta(sc)), suites.spin_x_state(s, OnShellMomentum.rest(m))]
    tensors = [mk.antisym_tensor(t01=1.0), mk.antisym_tensor(t12=1.0), suites.random_antisym(rng)]
    reports.append(suites.contraction_intrinsicality_check(s, states, boosts, tensors, sc.tol("quantum")))

    if sc.field is not None:
        f = sc.field
        reports.append(suites.em_three_form_check([(s, k, f) for k in momenta], sc.tol("em")))
        reports.append(suites.em_frame_consistency_check([(psi, L, f) for psi in states for L in boosts],
                                                         sc.tol("em")))
        reports.append(_nr_report(sc))
    return sorted(reports, key=lambda r: r.check)


def _nr_report(sc: Scenario) -> CheckReport:
    return em.nr_limit_check(sc.spin, sc.field, suites.nr_momenta(sc.nr_direction, sc.mass), sc.mass,
                             (sc.tol("nr_exponent_low"), sc.tol("nr_exponent_high")), sc.tol("nr_coefficient_rtol"))


def compare_rows(sc: Scenario) -> list[dict[str, Any]]:
    """One row per (candidate, boost): lhs and rhs of the observer comparison and their gap."""
    if not sc.boosts:
        raise ScenarioError("boosts: the compare command needs at least one boost")
    s = sc.spin
    rng = np.random.default_rng(sc.seed)
    psi = _parse_state(sc)
    boosts = [("identity", np.eye(4))] + [(b.label(), b.matrix()) for b in sc.boosts]
    candidates = [
        ("wigner_Sx", it.wigner_component_family(s, [1, 0, 0])),
        ("wigner_Sy", it.wigner_component_family(s, [0, 1, 0])),
        ("wigner_Sz", it.wigner_component_family(s, [0, 0, 1])),
        ("contraction_01", it.tensor_contraction_family(s, mk.antisym_tensor(t01=1.0))),
        ("contraction_12", it.tensor_contraction_family(s, mk.antisym_tensor(t12=1.0))),
        ("contraction_random", it.tensor_contraction_family(s, suites.random_antisym(rng))),
        ("identity", it.identity_family(s)),
    ]
    rows = []
    for name, family in candidates:
        rep = it.quantum_intrinsicality_check(family, psi, [L for _, L in boosts], sc.tol("quantum"))
        for (label, _), (inputs, gap) in zip(boosts, rep.samples):
            rows.append({"candidate": name, "boost": label, "lhs": inputs["lhs"], "rhs": inputs["rhs"], "gap": gap})
    return rows


def run_em(sc: Scenario) -> dict[str, Any]:
    if sc.field is None:
        raise ScenarioError("field: the em command needs a field")
    s, f = sc.spin, sc.field
    F = em.field_tensor(f)
    invariants = em.field_invariants(F)
    spectra = []
    worst = 0.0
    for k in _momenta(sc):
        H = em.interaction_hamiltonian(s, k, f)
        dev = em.three_form_deviation(s, k, f)
        worst = max(worst, dev)
        spectra.append({"p": list(k.p), "spectrum": em.spectrum(H), "three_form_deviation": dev})
    three = CheckReport("em_three_form_max", sc.tol("em"), worst)
    nr = _nr_report(sc)
    return {
        "invariants": {"F_ab_F^ab": invariants[0], "F_ab_dualF^ab": invariants[1]},
        "spectra": spectra,
        "three_form": three,
        "nr_limit": nr,
        "passed": three.passed and nr.passed,
    }


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    if isinstance(x, list):
        return " ".join(_fmt(v) for v in x)
    return str(x)


def _table(rows: list[dict[str, Any]], fmt: str) -> str:
    if not rows:
        return ""
    header = list(rows[0])
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(row[h]) for h in header])
        return buf.getvalue()
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    lines += ["| " + " | ".join(_fmt(row[h]) for h in header) + " |" for row in rows]
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="intrinsic-spin", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", metavar="PATH", help="scenario JSON file (default: bundled scenario)")
    common.add_argument("--seed", type=int, help="override the scenario seed")
    common.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE", help="override a tolerance")
    common.add_argument("--format", choices=("json", "csv", "md"), default="json")
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--break-epsilon-convention", action="store_true",
                        help="debug: flip the sign of eps_0123 before running")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common], help="run the full identity suite")
    sub.add_parser("compare", parents=[common], help="tabulate observer comparisons per spin candidate")
    sub.add_parser("em", parents=[common], help="spin-field Hamiltonian spectra and limits")
    return parser


def _parse_tols(items: list[str]) -> dict[str, float]:
    out = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep:
            raise ScenarioError(f"--tol: expected NAME=VALUE, got {item!r}")
        try:
            out[name.strip()] = float(value)
        except ValueError:
            raise ScenarioError(f"--tol {name}: not a number: {value!r}") from None
    return out


def _render(command: str, sc: Scenario, fmt: str) -> tuple[str, int]:
    head = {"schema_version": SCHEMA_VERSION, "command": command, "epsilon_0123": mk.epsilon_sign(),
            "scenario": _scenario_summary(sc)}
    if command == "verify":
        reports = run_verify(sc)
        passed = all(r.passed for r in reports)
        if fmt == "json":
            text = dumps({**head, "passed": passed, "checks": reports})
        else:
            text = _table([{"check": r.check, "passed": r.passed, "max_residual": r.max_residual,
                            "tolerance": r.tolerance} for r in reports], fmt)
        return text, EXIT_OK if passed else EXIT_FAIL
    if command == "compare":
        rows = compare_rows(sc)
        text = dumps({**head, "rows": rows}) if fmt == "json" else _table(rows, fmt)
        return text, EXIT_OK
    result = run_em(sc)
    if fmt == "json":
        text = dumps({**head, **result})
    else:
        text = _table([{"p": row["p"], "spectrum": row["spectrum"], "three_form_deviation": row["three_form_deviation"]}
                       for row in result["spectra"]], fmt)
    return text, EXIT_OK if result["passed"] else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        sc = load_scenario(args.scenario).with_overrides(args.seed, _parse_tols(args.tol))
        debug = mk.epsilon_convention(-1) if args.break_epsilon_convention else contextlib.nullcontext()
        with debug:
            text, code = _render(args.command, sc, args.format)
    except ScenarioError as exc:
        print(f"intrinsic-spin: invalid scenario: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
