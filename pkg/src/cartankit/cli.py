"""Batch front door: load a scenario, run tensor computations, residual
evaluations and the verification suite, and emit reports.

    cartan-kit <all|verify|tensors|residuals> --scenario <path|preset:NAME>
               [--filter PAT] [--seed N] [--out PATH] [--format text|json]

Exit status: 0 all pass; 1 a check or asserted residual failed; 2 scenario
parse error; 3 validation error (connection antisymmetry, tetrad
degeneracy).  CARTANKIT_SEED overrides --seed.  The machine-readable report
is deterministic: running the same scenario twice yields byte-identical
JSON (timings are reported only in the human-readable text).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .scalars import Q, ParseError, ScalarExpr, parse_polynomial, qstr
from . import lorentz
from .lorentz import H_SIGNS, cayley_from_parameters, group_bindings
from .fields import (ConnectionField, DegenerateTetrad, TetradField,
                     curvature, torsion)
from . import multisym as ms
from . import harness
from .presets import preset

EXIT_PASS = 0
EXIT_CHECK_FAILURE = 1
EXIT_PARSE_ERROR = 2
EXIT_VALIDATION_ERROR = 3

FAMILIES = ("einstein", "spin", "equivariance", "r1", "r2")


class ScenarioError(ValueError):
    def __init__(self, message, exit_code):
        super().__init__(message)
        self.exit_code = exit_code


def _parse_rational(text) -> "Q":
    if isinstance(text, int):
        return Q(text)
    try:
        if "/" in text:
            num, den = text.split("/")
            return Q(int(num), int(den))
        return Q(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ScenarioError(f"bad rational {text!r}: {exc}",
                            EXIT_PARSE_ERROR) from None


def _parse_entry(value, where) -> ScalarExpr:
    if isinstance(value, (int, str)):
        try:
            return parse_polynomial(str(value))
        except ParseError as exc:
            raise ScenarioError(f"{where}: {exc}", EXIT_PARSE_ERROR) from None
    raise ScenarioError(f"{where}: expected a polynomial string",
                        EXIT_PARSE_ERROR)


class Scenario:
    """Validated scenario: fields, momenta, evaluation and group points."""

    def __init__(self, raw: dict):
        self.raw = raw
        self.name = raw.get("name", "unnamed")
        tet = raw.get("tetrad")
        conn = raw.get("connection")
        if not tet or not conn:
            raise ScenarioError("scenario must contain tetrad and connection",
                                EXIT_PARSE_ERROR)
        rows = [[_parse_entry(tet[a][mu], f"tetrad[{a}][{mu}]")
                 for mu in range(4)] for a in range(4)]
        entries = [[[_parse_entry(conn[i][j][mu],
                                  f"connection[{i}][{j}][{mu}]")
                     for mu in range(4)] for j in range(4)] for i in range(4)]
        try:
            self.connection = ConnectionField.from_entries(entries)
        except ValueError as exc:
            raise ScenarioError(str(exc), EXIT_VALIDATION_ERROR) from None
        try:
            self.tetrad = TetradField.from_rows(rows)
        except DegenerateTetrad as exc:
            raise ScenarioError(str(exc), EXIT_VALIDATION_ERROR) from None

        self.points = []
        for pt in raw.get("evaluation_points", [["0", "0", "0", "0"]]):
            self.points.append({mu: _parse_rational(pt[mu])
                                for mu in range(4)})
        try:
            self.tetrad.check_nondegenerate_at(self.points)
        except DegenerateTetrad as exc:
            raise ScenarioError(str(exc), EXIT_VALIDATION_ERROR) from None

        self.group_samples = []
        for params in raw.get("group_samples", [["0"] * 6]):
            vals = [_parse_rational(p) for p in params]
            try:
                self.group_samples.append(cayley_from_parameters(vals))
            except lorentz.CayleySingular:
                raise ScenarioError(
                    f"group sample {params} is Cayley-singular",
                    EXIT_VALIDATION_ERROR) from None

        mom = raw.get("momentum")
        if mom:
            psi0 = [[[[_parse_entry(mom["psi0"][d][c][mu][j],
                                    f"momentum.psi0[{d}][{c}][{mu}][{j}]")
                       for j in range(6)] for mu in range(4)]
                     for c in range(4)] for d in range(4)]
            psi1 = [[[_parse_entry(mom["psi1"][a][mu][j],
                                   f"momentum.psi1[{a}][{mu}][{j}]")
                      for j in range(6)] for mu in range(4)]
                    for a in range(4)]
            try:
                self.momentum = ms.MomentumField.from_entries(psi0, psi1)
            except ms.GroupDegreeError as exc:
                raise ScenarioError(str(exc), EXIT_VALIDATION_ERROR) from None
        else:
            self.momentum = ms.MomentumField.zero()

        self.suite_filter = raw.get("suite_filter")
        expect = raw.get("expect_zero_residuals", [])
        for fam in expect:
            if fam not in FAMILIES:
                raise ScenarioError(
                    f"unknown residual family {fam!r}; known: {FAMILIES}",
                    EXIT_PARSE_ERROR)
        self.expect_zero = list(expect)


def load_scenario(spec: str) -> Scenario:
    """Load 'preset:NAME' or a JSON (or TOML, where supported) file."""
    if spec.startswith("preset:"):
        try:
            return Scenario(preset(spec[len("preset:"):]))
        except KeyError as exc:
            raise ScenarioError(exc.args[0], EXIT_PARSE_ERROR) from None
    try:
        with open(spec, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario: {exc}",
                            EXIT_PARSE_ERROR) from None
    if spec.endswith(".toml"):
        try:
            import tomllib
        except ImportError:
            raise ScenarioError(
                "TOML scenarios need Python >= 3.11 (tomllib); "
                "use JSON instead", EXIT_PARSE_ERROR) from None
        try:
            return Scenario(tomllib.loads(data.decode()))
        except tomllib.TOMLDecodeError as exc:
            raise ScenarioError(f"TOML parse error: {exc}",
                                EXIT_PARSE_ERROR) from None
    try:
        raw = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ScenarioError(
            f"JSON parse error at line {exc.lineno}, column {exc.colno}: "
            f"{exc.msg}", EXIT_PARSE_ERROR) from None
    return Scenario(raw)


# -- report assembly -----------------------------------------------------------

def _eval_rexpr(v, bind):
    return qstr(v.evaluate(bind))


def tensors_section(sc: Scenario) -> list:
    tor = torsion(sc.tetrad, sc.connection)
    cur = curvature(sc.connection, sc.tetrad)
    out = []
    for bind in sc.points:
        entry = {
            "point": [qstr(bind[mu]) for mu in range(4)],
            "torsion_frame": [[[_eval_rexpr(tor.t_frame[a][c][d], bind)
                                for d in range(4)] for c in range(4)]
                              for a in range(4)],
            "curvature_frame_up": [[[[qstr(
                (cur.f_frame[a][b][c][d] * H_SIGNS[b]).evaluate(bind))
                for d in range(4)] for c in range(4)] for b in range(4)]
                for a in range(4)],
            "ricci": [[_eval_rexpr(cur.ricci[a][b], bind) for b in range(4)]
                      for a in range(4)],
            "scalar_curvature": _eval_rexpr(cur.scalar, bind),
            "einstein_mixed": [[_eval_rexpr(cur.einstein_mixed[b][a], bind)
                                for a in range(4)] for b in range(4)],
        }
        out.append(entry)
    return out


def residuals_section(sc: Scenario) -> dict:
    l = ms.lift(sc.tetrad, sc.connection)
    hv = ms.hvdw_residuals(l, sc.momentum)
    prop31 = []
    for bind in sc.points:
        for g in sc.group_samples:
            full = dict(bind)
            full.update(group_bindings(g))
            prop31.append({
                "point": [qstr(bind[mu]) for mu in range(4)],
                "group_sample": [[qstr(g.g[a][b]) for b in range(4)]
                                 for a in range(4)],
                "einstein": [[qstr(hv.einstein[a][s].evaluate(full))
                              for s in range(4)] for a in range(4)],
                "spin": [[[qstr(hv.spin[a][b][s].evaluate(full))
                           for s in range(4)] for b in range(4)]
                         for a in range(4)],
                "equivariance0": [[[[qstr(
                    hv.equivariance0[c][d][mu][j].evaluate(full))
                    for j in range(6)] for mu in range(4)]
                    for d in range(4)] for c in range(4)],
                "equivariance1": [[[qstr(
                    hv.equivariance1[c][mu][j].evaluate(full))
                    for j in range(6)] for mu in range(4)]
                    for c in range(4)],
            })
    r1, r2 = ms.einstein_cartan_residuals(sc.tetrad, sc.connection,
                                          sc.momentum)
    prop32 = []
    for bind in sc.points:
        gbind = dict(bind)
        gbind.update(group_bindings(sc.group_samples[0]
                                    if sc.group_samples
                                    else lorentz.IDENTITY_GROUP))
        prop32.append({
            "point": [qstr(bind[mu]) for mu in range(4)],
            "r1": [[qstr(r1[b][a].evaluate(gbind)) for a in range(4)]
                   for b in range(4)],
            "r2": [[[qstr(r2[a][c][d].evaluate(gbind)) for d in range(4)]
                    for c in range(4)] for a in range(4)],
        })
    return {"prop31": prop31, "prop32": prop32}


def _is_zero_table(obj) -> bool:
    if isinstance(obj, str):
        return obj == "0/1"
    return all(_is_zero_table(v) for v in obj)


def assert_zero_failures(sc: Scenario, residuals: dict) -> list:
    """Names of residual families the scenario asserts zero but are not."""
    bad = []
    for fam in sc.expect_zero:
        if fam == "einstein":
            ok = all(_is_zero_table(rec["einstein"])
                     for rec in residuals["prop31"])
        elif fam == "spin":
            ok = all(_is_zero_table(rec["spin"])
                     for rec in residuals["prop31"])
        elif fam == "equivariance":
            ok = all(_is_zero_table(rec["equivariance0"])
                     and _is_zero_table(rec["equivariance1"])
                     for rec in residuals["prop31"])
        elif fam == "r1":
            ok = all(_is_zero_table(rec["r1"])
                     for rec in residuals["prop32"])
        else:
            ok = all(_is_zero_table(rec["r2"])
                     for rec in residuals["prop32"])
        if not ok:
            bad.append(fam)
    return bad


def checks_section(sc: Scenario, filter_pattern, seed: int):
    pattern = filter_pattern if filter_pattern is not None \
        else sc.suite_filter
    results = harness.run_suite(pattern, seed=seed)
    oracle_of = {spec.id: spec.oracle for spec in harness.REGISTRY}
    serial = [{"id": r.id, "verdict": r.verdict, "witness": r.witness,
               "oracle": oracle_of[r.id],
               "info": {k: str(v) for k, v in r.info.items()}}
              for r in results]
    return results, serial


def build_report(sc: Scenario, command: str, filter_pattern, seed: int):
    report = {
        "scenario": {
            "name": sc.name,
            "seed": seed,
            "suite_filter": filter_pattern if filter_pattern is not None
            else sc.suite_filter,
            "expect_zero_residuals": sc.expect_zero,
        },
        "tensors": [],
        "residuals": {"prop31": [], "prop32": []},
        "checks": [],
        "verdict": "pass",
    }
    timings = []
    failures = []
    if command in ("all", "tensors"):
        report["tensors"] = tensors_section(sc)
    if command in ("all", "residuals"):
        report["residuals"] = residuals_section(sc)
        bad = assert_zero_failures(sc, report["residuals"])
        for fam in bad:
            failures.append(f"residual family {fam} asserted zero but is not")
    if command in ("all", "verify"):
        results, serial = checks_section(sc, filter_pattern, seed)
        report["checks"] = serial
        timings = [(r.id, r.seconds) for r in results]
        for r in results:
            if r.verdict == "fail":
                failures.append(f"check {r.id}: {r.witness}")
    report["verdict"] = "pass" if not failures else "fail"
    return report, failures, timings


def render_text(report: dict, timings) -> str:
    lines = []
    sc = report["scenario"]
    lines.append(f"scenario: {sc['name']}  (seed {sc['seed']})")
    if sc.get("suite_filter"):
        lines.append(f"suite filter: {sc['suite_filter']}")
    for entry in report["tensors"]:
        lines.append(f"\n== tensors at x = ({', '.join(entry['point'])})")
        lines.append(f"scalar curvature S = {entry['scalar_curvature']}")
        lines.append("einstein G^b_a:")
        for b in range(4):
            lines.append("  " + "  ".join(entry["einstein_mixed"][b]))
        lines.append("ricci Ric_ab:")
        for a in range(4):
            lines.append("  " + "  ".join(entry["ricci"][a]))
        lines.append("torsion T^a_{cd} (a; rows c, cols d):")
        for a in range(4):
            lines.append(f" a={a}:")
            for c in range(4):
                lines.append("  " + "  ".join(entry["torsion_frame"][a][c]))
        lines.append("curvature F^{ab}_{cd} (nonzero entries):")
        any_nz = False
        for a in range(4):
            for b in range(4):
                for c in range(4):
                    for d in range(4):
                        v = entry["curvature_frame_up"][a][b][c][d]
                        if v != "0/1":
                            lines.append(f"  F^{{{a}{b}}}_{{{c}{d}}} = {v}")
                            any_nz = True
        if not any_nz:
            lines.append("  (all zero)")
    res = report["residuals"]
    for rec in res["prop31"]:
        lines.append(f"\n== covariant residuals at x = "
                     f"({', '.join(rec['point'])}), group sample "
                     f"g[0] = ({', '.join(rec['group_sample'][0])})")
        for fam in ("einstein", "spin", "equivariance0", "equivariance1"):
            flat = []

            def walk(node, idx):
                if isinstance(node, str):
                    if node != "0/1":
                        flat.append((idx, node))
                else:
                    for i, sub in enumerate(node):
                        walk(sub, idx + (i,))
            walk(rec[fam], ())
            if flat:
                lines.append(f" {fam}: {len(flat)} nonzero entries")
                for idx, v in flat:
                    lines.append(f"   {fam}{list(idx)} = {v}")
            else:
                lines.append(f" {fam}: all zero")
    for rec in res["prop32"]:
        lines.append(f"\n== Einstein-Cartan residuals at x = "
                     f"({', '.join(rec['point'])})")
        lines.append(" R1 (G^b_a - momentum term):")
        for b in range(4):
            lines.append("  " + "  ".join(rec["r1"][b]))
        nz = [(a, c, d, rec["r2"][a][c][d]) for a in range(4)
              for c in range(4) for d in range(4)
              if rec["r2"][a][c][d] != "0/1"]
        if nz:
            lines.append(f" R2 nonzero entries ({len(nz)}):")
            for a, c, d, v in nz:
                lines.append(f"   R2[{a}][{c}][{d}] = {v}")
        else:
            lines.append(" R2: all zero")
    if report["checks"]:
        lines.append("\n== verification suite")
        tdict = dict(timings)
        for rec in report["checks"]:
            t = tdict.get(rec["id"])
            ts = f" ({t:.2f}s)" if t is not None else ""
            lines.append(f" {rec['verdict'].upper():4s} {rec['id']}{ts}")
            if rec["witness"]:
                lines.append(f"      witness: {rec['witness']}")
            if rec["info"]:
                lines.append(f"      info: {rec['info']}")
    lines.append(f"\noverall verdict: {report['verdict']}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="cartan-kit",
        description="exact Einstein-Cartan exterior calculus and "
                    "verification harness")
    parser.add_argument("command",
                        choices=["all", "verify", "tensors", "residuals"])
    parser.add_argument("--scenario", default="preset:minkowski",
                        help="path to a scenario file or preset:NAME")
    parser.add_argument("--filter", dest="filter_pattern", default=None,
                        help="regular expression over check ids")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default=None,
                        help="write the machine-readable report here")
    parser.add_argument("--format", choices=["text", "json"], default="text")
    args = parser.parse_args(argv)

    seed = args.seed
    env_seed = os.environ.get("CARTANKIT_SEED")
    if env_seed is not None:
        try:
            seed = int(env_seed)
        except ValueError:
            print(f"error: CARTANKIT_SEED={env_seed!r} is not an integer",
                  file=sys.stderr)
            return EXIT_PARSE_ERROR

    try:
        sc = load_scenario(args.scenario)
        report, failures, timings = build_report(
            sc, args.command, args.filter_pattern, seed)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code

    machine = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(machine)
    if args.format == "json":
        sys.stdout.write(machine)
    else:
        sys.stdout.write(render_text(report, timings))
    if failures:
        for f in failures:
            print(f"failure: {f}", file=sys.stderr)
        return EXIT_CHECK_FAILURE
    return EXIT_PASS


if __name__ == "__main__":
    sys.exit(main())
