"""Command-line front end: ``jps VERB [options]``.

Exit codes: 0 all requested checks pass, 1 some check failed, 2 bad
configuration, 3 structure not supported by a requested check (including
non-generic Sklyanin parameters), 4 internal inconsistency.

Config files hold one ``key = value`` per line; ``#`` starts a comment.
Keys are the long option names without dashes (``preset``, ``J``, ``k``,
``casimirs``, ``P1``, ``P2``, ``weights``, ``lambda``, ``max-degree``,
``check``, ``format``, ``seed``, ``jobs``).  Inline flags override the file.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import platform
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from . import __version__
from .complexes import CANONICAL, modular_check
from .homology import (UnsupportedStructureError, closed_form_series, cohomology_dims,
                       default_jobs, euler_check, homology_dims, predicted_homology_series,
                       taylor_coeffs)
from .identities import check_all
from .modcheck import (CheckResult, H2_SIXTH_DEFAULT,
                       kernel_characterization_check, koszul_exactness_check, milnor_dims,
                       resolve_h2_sixth, saito_division_check, verify_generators)
from .poisson import (SLOT_PAIRS, GenericityError, PoissonStructure, SklyaninParams,
                      StructureError, bracket_table, expected_k_table, is_casimir, jacobiator,
                      jacobian_bracket, sklyanin_preset)
from .polyring import COORDS, STANDARD_WEIGHTS, PolyParseError, WeightVector, parse_poly

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_UNSUPPORTED, EXIT_INTERNAL = 0, 1, 2, 3, 4

VERBS = ("verify", "homology", "cohomology", "bracket-table", "check-identities", "milnor",
         "generators", "koszul", "kernels")
CHECKS = ("identities", "bracket-table", "jacobi", "unimodular", "homology", "cohomology",
          "series-compare", "generators", "milnor", "koszul", "saito", "kernels", "euler")
VERB_CHECKS = {
    "verify": CHECKS,
    "homology": ("homology",),
    "cohomology": ("cohomology",),
    "bracket-table": ("bracket-table",),
    "check-identities": ("identities",),
    "milnor": ("milnor",),
    "generators": ("generators",),
    "koszul": ("koszul",),
    "kernels": ("kernels",),
}
PRESETS = ("sklyanin-k", "sklyanin-J", "custom")

# degree caps for the per-degree module checks
KERNEL_MAX = 8
KOSZUL_MAX = 6
COHOMOLOGY_MAX = 8
IDENTITY_CASES = 100


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    verb: str = "verify"
    preset: str = "sklyanin-J"
    k: Fraction = Fraction(2)
    J: Tuple[Fraction, Fraction, Fraction] = (Fraction(2), Fraction(3), Fraction(5))
    P1: Optional[str] = None
    P2: Optional[str] = None
    weights: Tuple[int, int, int, int] = (1, 1, 1, 1)
    lam: Optional[Fraction] = None
    max_degree: int = 12
    checks: Tuple[str, ...] = ()
    output: str = "json"
    seed: int = 0
    jobs: int = 1

    def __post_init__(self):
        if self.max_degree < 0:
            raise ConfigError("max-degree must be >= 0")
        if self.preset not in PRESETS:
            raise ConfigError(f"unknown preset {self.preset!r}")
        bad = [c for c in self.checks if c not in CHECKS]
        if bad:
            raise ConfigError(f"unknown checks {bad}; choose from {', '.join(CHECKS)}")
        if self.output not in ("json", "csv", "text"):
            raise ConfigError(f"unknown format {self.output!r}")


# --------------------------------------------------------------------------
# parsing


def _fraction(s: str) -> Fraction:
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"not a rational number: {s!r}") from None


def _int(s: str, what: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise ConfigError(f"{what} must be an integer, got {s!r}") from None


def read_key_values(text: str, source: str) -> Dict[str, str]:
    out = {}
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{n}: expected 'key = value'")
        key, val = (s.strip() for s in line.split("=", 1))
        if not key:
            raise ConfigError(f"{source}:{n}: empty key")
        out[key] = val
    return out


def _read_file(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e.strerror}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="jps", description="Jacobian Poisson structures in four variables: "
                                "brackets, Poisson (co)homology and module-structure checks.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("--config", help="key = value file; inline flags override it")
    p.add_argument("--preset", choices=PRESETS)
    p.add_argument("--k", help="k-form parameter (rational)")
    p.add_argument("--J", help="J-form parameters a,b,c")
    p.add_argument("--casimirs", help="file with 'P1 = ...' and 'P2 = ...' lines (custom preset)")
    p.add_argument("--weights", help="weights a,b,c,d (custom preset)")
    p.add_argument("--lambda", dest="lam", help="bracket multiplier (rational)")
    p.add_argument("--max-degree", dest="max_degree", help="largest degree computed (default 12)")
    p.add_argument("--check", help=f"comma-separated subset of: {', '.join(CHECKS)}")
    p.add_argument("--format", dest="output", choices=("json", "csv", "text"))
    p.add_argument("--seed", help="seed for randomized checks")
    p.add_argument("--jobs", help="worker processes (default $JPS_JOBS or 1)")
    return p


def config_from_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    values: Dict[str, str] = {}
    if args.config:
        values.update(read_key_values(_read_file(args.config), args.config))
    for key in ("preset", "k", "J", "casimirs", "weights", "lam", "max_degree", "check", "output",
                "seed", "jobs"):
        v = getattr(args, key)
        if v is not None:
            values[{"lam": "lambda", "max_degree": "max-degree", "output": "format"}.get(key, key)] = v
    return make_config(args.verb, values)


def make_config(verb: str, values: Dict[str, str]) -> RunConfig:
    known = {"preset", "k", "J", "casimirs", "P1", "P2", "weights", "lambda", "max-degree", "check",
             "format", "seed", "jobs"}
    extra = set(values) - known
    if extra:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(extra))}")
    kw = {"verb": verb}
    if "preset" in values:
        kw["preset"] = values["preset"]
    if "k" in values:
        kw["k"] = _fraction(values["k"])
    if "J" in values:
        parts = values["J"].split(",")
        if len(parts) != 3:
            raise ConfigError("J needs three comma-separated values")
        kw["J"] = tuple(_fraction(s) for s in parts)
    if "casimirs" in values:
        cas = read_key_values(_read_file(values["casimirs"]), values["casimirs"])
        for key in cas:
            if key not in ("P1", "P2", "lambda", "weights"):
                raise ConfigError(f"{values['casimirs']}: unknown key {key!r}")
        values = {**cas, **{k: v for k, v in values.items() if k != "casimirs"}}
    for key in ("P1", "P2"):
        if key in values:
            kw[key] = values[key]
    if "weights" in values:
        parts = values["weights"].split(",")
        if len(parts) != 4:
            raise ConfigError("weights need four comma-separated integers")
        kw["weights"] = tuple(_int(s, "weight") for s in parts)
    if "lambda" in values:
        kw["lam"] = _fraction(values["lambda"])
    if "max-degree" in values:
        kw["max_degree"] = _int(values["max-degree"], "max-degree")
    if "check" in values:
        kw["checks"] = tuple(c.strip() for c in values["check"].split(",") if c.strip())
    if "format" in values:
        kw["output"] = values["format"]
    if "seed" in values:
        kw["seed"] = _int(values["seed"], "seed")
    kw["jobs"] = _int(values["jobs"], "jobs") if "jobs" in values else default_jobs()
    if kw["jobs"] < 1:
        raise ConfigError("jobs must be >= 1")
    return RunConfig(**kw)


def build_structure(cfg: RunConfig) -> PoissonStructure:
    """May raise ConfigError (bad input) or GenericityError (non-generic preset)."""
    if cfg.preset == "sklyanin-k":
        S = sklyanin_preset(SklyaninParams("k", k=cfg.k))
    elif cfg.preset == "sklyanin-J":
        S = sklyanin_preset(SklyaninParams("J", J=cfg.J))
    else:
        if cfg.P1 is None or cfg.P2 is None:
            raise ConfigError("custom preset needs P1 and P2 (use --casimirs FILE)")
        try:
            w = WeightVector(cfg.weights)
            P1, P2 = parse_poly(cfg.P1), parse_poly(cfg.P2)
            return PoissonStructure(P1, P2, cfg.lam if cfg.lam is not None else Fraction(1), w)
        except GenericityError:
            raise
        except (PolyParseError, StructureError, ValueError) as e:
            raise ConfigError(str(e)) from None
    if cfg.lam is not None and cfg.lam != S.lam:
        try:
            S = PoissonStructure(S.P1, S.P2, cfg.lam, S.weights, S.name, S.params)
        except StructureError as e:
            raise ConfigError(str(e)) from None
    return S


# --------------------------------------------------------------------------
# checks


@dataclass
class Report:
    structure: dict
    grading_convention: str = CANONICAL
    tables: dict = field(default_factory=dict)
    checks: List[CheckResult] = field(default_factory=list)

    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "structure": self.structure,
            "grading_convention": self.grading_convention,
            "tables": self.tables,
            "checks": [c.as_dict() for c in self.checks],
            "versions": {"jps": __version__, "python": platform.python_version()},
        }


class Inconsistency(RuntimeError):
    """Two independent computations of the same quantity disagree."""


def _quadratic_standard(S: PoissonStructure) -> bool:
    return S.weights == STANDARD_WEIGHTS and S.degree_P1 == S.degree_P2 == 2


class Runner:
    def __init__(self, cfg: RunConfig, S: PoissonStructure):
        self.cfg, self.S = cfg, S
        self.N = cfg.max_degree
        self.report = Report(S.describe())
        self._hom = None

    def homology(self):
        if self._hom is None:
            self._hom = homology_dims(self.S, self.N, jobs=self.cfg.jobs)
            self.report.tables["homology"] = self._hom
        return self._hom

    def add(self, name, ok, **details):
        self.report.checks.append(CheckResult(name, bool(ok), details))

    # individual checks -------------------------------------------------
    def check_identities(self):
        res = check_all(self.cfg.seed, IDENTITY_CASES)
        failed = [r["item"] for r in res if not r["pass"]]
        self.add("identities", not failed, cases=IDENTITY_CASES, seed=self.cfg.seed,
                 passed=len(res) - len(failed), total=len(res), failed_items=failed)

    def check_bracket_table(self):
        S = self.S
        table = bracket_table(S)
        rows = {f"{{x{i},x{j}}}": str(v) for (i, j), v in zip(SLOT_PAIRS, table)}
        self.report.tables["bracket_table"] = rows
        bad = [f"{{x{i},x{j}}}" for i, j in SLOT_PAIRS
               if jacobian_bracket(S, COORDS[i - 1], COORDS[j - 1]) != S.pi[i, j]]
        details = {"mismatch_with_determinant": bad}
        if S.name == "sklyanin-k":
            exp = expected_k_table(dict(S.params)["k"])
            wrong = [f"{{x{i},x{j}}}" for (i, j), v in exp.items() if S.pi[i, j] != v]
            details["mismatch_with_printed_table"] = wrong
            bad = bad + wrong
        self.add("bracket-table", not bad, **details)

    def check_jacobi(self):
        S = self.S
        bad = [f"(x{i},x{j},x{k})" for i, j, k in combinations(range(1, 5), 3)
               if not jacobiator(S, COORDS[i - 1], COORDS[j - 1], COORDS[k - 1]).is_zero()]
        cas = [name for name, P in (("P1", S.P1), ("P2", S.P2)) if not is_casimir(S, P)]
        self.add("jacobi", not bad and not cas, jacobi_failures=bad, non_casimirs=cas)

    def check_unimodular(self):
        D2, ok = modular_check(self.S)
        self.add("unimodular", ok, modular_field={str(k): str(v) for k, v in sorted(D2.comps.items()) if v})

    def check_homology(self):
        dims = self.homology()
        neg = [(i, d) for i in range(5) for d in range(self.N + 1) if dims[i][d] < 0]
        if neg:
            raise Inconsistency(f"negative homology dimension at (i, d) = {neg[0]}")
        self.add("homology", True, max_degree=self.N)

    def check_series(self):
        if not _quadratic_standard(self.S):
            raise UnsupportedStructureError("closed-form series are stated for quadratic Casimirs and unit weights")
        dims = self.homology()
        expected = [taylor_coeffs(closed_form_series(i), self.N) for i in range(5)]
        derived = predicted_homology_series(self.S, self.N)
        self.report.tables["series_expected"] = expected
        self.report.tables["series_computed"] = derived
        bad = [{"i": i, "degree": d, "computed": dims[i][d], "expected": expected[i][d]}
               for i in range(5) for d in range(self.N + 1) if dims[i][d] != expected[i][d]]
        bad_derived = [{"i": i, "degree": d} for i in range(5) for d in range(self.N + 1)
                       if derived[i][d] != dims[i][d]]
        self.add("series-compare", not bad and not bad_derived, mismatches=bad,
                 exact_sequence_mismatches=bad_derived,
                 closed_forms={str(i): str(closed_form_series(i)) for i in range(5)})

    def check_euler(self):
        dims = self.homology()
        bad = []
        for d in range(self.N + 1):
            chain, hom = euler_check(self.S, d, dims)
            if chain != hom:
                bad.append({"degree": d, "chain": chain, "homology": hom})
        self.add("euler", not bad, failures=bad, max_degree=self.N)

    def check_cohomology(self):
        N = min(self.N, COHOMOLOGY_MAX) if self.cfg.verb == "verify" else self.N
        co = cohomology_dims(self.S, N, jobs=self.cfg.jobs)
        w = self.S.weights.total
        self.report.tables["cohomology"] = {str(i): {str(d): v for d, v in sorted(row.items())}
                                            for i, row in co.items()}
        hom = homology_dims(self.S, N, jobs=self.cfg.jobs) if self._hom is None or len(self._hom[0]) <= N \
            else self._hom
        bad = [{"i": i, "degree": d} for i in range(5) for d, v in co[i].items()
               if v != hom[4 - i][d + w]]
        self.add("cohomology", not bad, duality_failures=bad, max_degree=N)

    def check_milnor(self):
        r = milnor_dims(self.S.P1, self.S.P2, self.N, self.S.weights)
        self.report.tables["milnor"] = list(r.graded_dims)
        self.add("milnor", r.finite, graded_dims=list(r.graded_dims),
                 mu=r.mu if r.finite else f"not finite up to {self.N}")

    def check_kernels(self):
        top = min(self.N, KERNEL_MAX)
        for i in range(1, 5):
            fails = []
            for d in range(top + 1):
                r = kernel_characterization_check(self.S, i, d)
                if not r:
                    fails.append(r.details)
            self.add(f"kernel-{i}", not fails, map=f"boundary_{i}", max_degree=top, failures=fails)

    def check_saito(self):
        top = min(self.N, KERNEL_MAX)
        fails = [r.details for r in (saito_division_check(self.S, d) for d in range(top + 1)) if not r]
        self.add("saito", not fails, max_degree=top, failures=fails)

    def check_koszul(self):
        top = min(self.N, KOSZUL_MAX)
        for label, P in (("P1", self.S.P1), ("P2", self.S.P2)):
            fails = []
            for d in range(top + 1):
                r = koszul_exactness_check(P, d, self.S.weights)
                if not r:
                    fails.append({"degree": d, "slots": r.details["failed_slots"]})
            self.add(f"koszul-{label}", not fails, polynomial=str(P), max_degree=top, failures=fails)

    def check_generators(self):
        for i in range(5):
            if i == 2:
                runs = resolve_h2_sixth(self.S, self.N)
                r = runs[H2_SIXTH_DEFAULT]
                c = r.as_check()
                c.details["sixth_generator_readings"] = {
                    k: {"spans": v.spans, "free": v.free} for k, v in runs.items()}
                c.details["sixth_generator_used"] = H2_SIXTH_DEFAULT
                self.report.checks.append(c)
            else:
                self.report.checks.append(verify_generators(self.S, i, self.N).as_check())

    DISPATCH = {
        "identities": check_identities, "bracket-table": check_bracket_table, "jacobi": check_jacobi,
        "unimodular": check_unimodular, "homology": check_homology, "series-compare": check_series,
        "euler": check_euler, "cohomology": check_cohomology, "milnor": check_milnor,
        "kernels": check_kernels, "saito": check_saito, "koszul": check_koszul,
        "generators": check_generators,
    }

    def run(self) -> Report:
        for name in self.checks():
            self.DISPATCH[name](self)
        return self.report

    def checks(self) -> Tuple[str, ...]:
        if self.cfg.checks:
            return self.cfg.checks
        names = VERB_CHECKS[self.cfg.verb]
        if self.cfg.verb == "verify":
            # skip what the structure does not support instead of failing the whole run
            S = self.S
            drop = set()
            if S.name != "sklyanin-J":
                drop.add("generators")
            if not _quadratic_standard(S):
                drop |= {"series-compare", "euler", "kernels"}
            if not modular_check(S)[1]:
                drop.add("cohomology")
            names = tuple(n for n in names if n not in drop)
        return names


def run(cfg: RunConfig) -> Report:
    return Runner(cfg, build_structure(cfg)).run()


# --------------------------------------------------------------------------
# output


def _json_default(o):
    if isinstance(o, Fraction):
        return str(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


def emit_report(r: Report, fmt: str = "json") -> bytes:
    d = r.as_dict()
    if fmt == "json":
        return (json.dumps(d, indent=2, sort_keys=True, default=_json_default) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["table", "i", "d", "dim"])
        for i, row in enumerate(d["tables"].get("homology", [])):
            for deg, v in enumerate(row):
                wr.writerow(["homology", i, deg, v])
        for i, row in d["tables"].get("cohomology", {}).items():
            for deg, v in row.items():
                wr.writerow(["cohomology", i, deg, v])
        return buf.getvalue().encode()
    lines = [f"structure: {d['structure']['name']} P1 = {d['structure']['P1']}, "
             f"P2 = {d['structure']['P2']}, lambda = {d['structure']['lambda']}"]
    for i, row in enumerate(d["tables"].get("homology", [])):
        lines.append(f"H_{i}: {' '.join(map(str, row))}")
    for i, row in d["tables"].get("cohomology", {}).items():
        lines.append(f"H^{i}: " + " ".join(f"{deg}:{v}" for deg, v in row.items()))
    for key, v in d["tables"].get("bracket_table", {}).items():
        lines.append(f"{key} = {v}")
    for c in d["checks"]:
        lines.append(f"{'PASS' if c['pass'] else 'FAIL'} {c['name']}")
    return ("\n".join(lines) + "\n").encode()


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cfg = config_from_args(argv)
        S = build_structure(cfg)
    except ConfigError as e:
        print(f"jps: config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except GenericityError as e:
        print(f"jps: non-generic parameters: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    try:
        report = Runner(cfg, S).run()
    except UnsupportedStructureError as e:
        print(f"jps: unsupported: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except Inconsistency as e:
        print(f"jps: internal inconsistency: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    sys.stdout.buffer.write(emit_report(report, cfg.output))
    sys.stdout.flush()
    if report.passed():
        return EXIT_OK
    for c in report.checks:
        if not c.passed:
            print(f"jps: check failed: {c.name}", file=sys.stderr)
    return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
