import argparse
import json
import sys

import pandas as pd

from evicalc import constants
from evicalc import exceptions
from evicalc.audit import auditor
from evicalc.audit import scenarios
from evicalc.audit.report import AXIOMS, CF_LIMIT, MARGINAL_INDEPENDENCE, MODULARITY, UPDATE_PROPERTY
from evicalc.calculi.evoking import EvokingThresholds, internist_score
from evicalc.calculi.likelihood import parse_log_base
from evicalc.calculi.registry import create_measure, measure_names
from evicalc.config import RunConfig, parse_seed
from evicalc.engine.evaluator import CALCULI, compare_calculi, evaluate_case
from evicalc.engine.rulebase import load_cases, load_rulebase
from evicalc.loggerutil import Logger
from evicalc.probability.modelfile import load_models

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_VIOLATED = 3

REPORT_FORMATS = ("text", "json")
TABLE_FORMATS = ("text", "csv", "json")


class EvicalcArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with 1; 2 is reserved for unreadable inputs."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _flag(parse):
    """Wraps an evicalc parser as an argparse type that keeps the original text."""

    def check(text):
        try:
            parse(text)
        except exceptions.EvicalcError as err:
            raise argparse.ArgumentTypeError(str(err)) from None
        return text

    return check


def _seed(text):
    try:
        return parse_seed(text)
    except exceptions.ParameterRangeError as err:
        raise argparse.ArgumentTypeError(str(err)) from None


def _emit(text: str, out, log: Logger):
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8") as f:
        f.write(text)
    log.output(f"Wrote {out}.")


def _write_report(report, config: RunConfig, log: Logger):
    report.config = config.to_dict()
    text = report.to_json() + "\n" if config.format == "json" else report.to_text()
    _emit(text, config.out, log)


def _write_table(table: pd.DataFrame, config: RunConfig, log: Logger):
    notes = table.attrs.get("notes", [])
    if config.format == "csv":
        text = table.to_csv(index=False)
    elif config.format == "json":
        document = {
            "config": config.to_dict(),
            "notes": notes,
            "rows": json.loads(table.to_json(orient="records")),
        }
        text = json.dumps(document, indent=2, sort_keys=True) + "\n"
    else:
        text = (table.to_string(index=False) if not table.empty else "(no rows)") + "\n"
        text += "".join(f"note: {note}\n" for note in notes)
    _emit(text, config.out, log)


def _family(config: RunConfig):
    kind = config.family
    if kind is None:
        if config.model is not None:
            kind = scenarios.EXPLICIT
        elif config.axiom == CF_LIMIT:
            return None
        else:
            kind = scenarios.CI_GRID
    models = ()
    if kind == scenarios.EXPLICIT:
        if config.model is None:
            raise exceptions.FamilyNameError("The explicit family needs --model.")
        models = tuple(load_models(config.model).values())
    return scenarios.create_family(
        kind, seed=config.seed, samples=config.samples, findings=config.findings, models=models
    )


def cmd_audit(config: RunConfig, log: Logger) -> int:
    measure = create_measure(config.measure, log_base=config.log_base, thresholds=config.thresholds)
    family = _family(config)
    if config.axiom == UPDATE_PROPERTY:
        tol = constants.COLLISION_TOLERANCE if config.tol is None else config.tol
        report = auditor.check_update_property(measure, family, tol, config.match_tol)
    elif config.axiom == MARGINAL_INDEPENDENCE:
        tol = constants.MODULARITY_TOLERANCE if config.tol is None else config.tol
        report = auditor.check_marginal_independence_trap(family, tol)
    elif config.axiom == CF_LIMIT:
        report = auditor.check_cf_limit_case(family, config.epsilon)
    elif measure.name == "evoking":
        report = auditor.audit_evoking_strengths(family, measure.thresholds, config.tol or 0.0)
    else:
        tol = constants.MODULARITY_TOLERANCE if config.tol is None else config.tol
        report = auditor.check_modularity(measure, family, tol)
    log.output(f"Audit of {report.axiom} for {report.measure}: {report.verdict}.")
    _write_report(report, config, log)
    return EXIT_OK if report.holds else EXIT_VIOLATED


def demo_mycin_counterexample(config: RunConfig):
    return auditor.reproduce_mycin_counterexample()


def demo_cf_limit_trap(config: RunConfig):
    report = auditor.check_marginal_independence_trap(scenarios.ci_grid())
    limit = auditor.check_cf_limit_case(epsilon=config.epsilon)
    report.details["cf_limit"] = limit.to_dict()
    report.notes.append(
        f"CF(H,E) approximates p(H|E) only for rare hypotheses: max |CF - p(H|E)| = "
        f"{limit.max_deviation:.3g} for p(H) < {config.epsilon:g}. Reading a certainty factor "
        "as a posterior and requiring modularity forces p(H|e) = p(H)."
    )
    return report


def demo_internist_modularity(config: RunConfig):
    thresholds = EvokingThresholds.parse(config.thresholds)
    family = scenarios.explicit([scenarios.mycin_counterexample_model()])
    report = auditor.audit_evoking_strengths(family, thresholds)
    rare = internist_score([1] * 5)
    report.notes.append(
        f"Summing evoking strengths: five findings of strength 1 score {rare}, the same as one "
        f"pathognomonic finding of strength {constants.EVOKING_MAX}."
    )
    return report


DEMOS = [
    {
        "name": "mycin-counterexample",
        "description": "certainty factors of two conditionally independent findings are not modular",
        "run": demo_mycin_counterexample,
    },
    {
        "name": "cf-limit-trap",
        "description": "a posterior used as a modular update forces marginal independence",
        "run": demo_cf_limit_trap,
    },
    {
        "name": "internist-modularity",
        "description": "evoking strengths inherit the non-modularity of posteriors",
        "run": demo_internist_modularity,
    },
]


def demo_names():
    return [d["name"] for d in DEMOS]


def run_demo(name: str, config: RunConfig):
    for demo in DEMOS:
        if demo["name"] == name:
            return demo["run"](config)
    raise exceptions.DemoNameError(
        f"No demo named '{name}'. Choose from {', '.join(demo_names())}."
    )


def cmd_demo(config: RunConfig, log: Logger) -> int:
    report = run_demo(config.name, config)
    log.output(f"Demo {config.name}: {report.axiom} {report.verdict}.")
    _write_report(report, config, log)
    return EXIT_OK


def cmd_eval(config: RunConfig, log: Logger) -> int:
    rulebase = load_rulebase(config.rules)
    cases = load_cases(config.case)
    rows = []
    for case in cases:
        state = evaluate_case(rulebase, case, config.calculus)
        for hypothesis in rulebase.hypotheses:
            rows.append(
                {
                    "case": case.id,
                    "hypothesis": hypothesis,
                    "calculus": state.kind,
                    "value": state.value(hypothesis),
                    "posterior": state.posterior(hypothesis),
                    "fired": ";".join(state.fired[hypothesis]),
                }
            )
    table = pd.DataFrame(
        rows, columns=["case", "hypothesis", "calculus", "value", "posterior", "fired"]
    )
    log.output(f"Evaluated {len(cases)} case(s) with {len(rulebase.rules)} {rulebase.kind} rules.")
    _write_table(table, config, log)
    return EXIT_OK


def cmd_compare(config: RunConfig, log: Logger) -> int:
    models = list(load_models(config.model).values())
    cases = load_cases(config.case) if config.case is not None else None
    calculi = CALCULI if config.calculus is None else (config.calculus,)
    table = compare_calculi(
        models,
        cases,
        calculi,
        log_base=config.log_base,
        thresholds=EvokingThresholds.parse(config.thresholds),
        samples=config.samples,
        seed=config.seed,
    )
    _write_table(table, config, log)
    return EXIT_OK


COMMANDS = {"audit": cmd_audit, "demo": cmd_demo, "eval": cmd_eval, "compare": cmd_compare}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--verbose", "-v", action="count", default=0, help="Print progress; twice for debug."
    )
    common.add_argument("--log-dir", type=str, default=None, help="Directory for log files.")
    common.add_argument("--out", type=str, default=None, help="Write the output here instead of stdout.")
    common.add_argument(
        "--seed", type=_seed, default=None, help="64-bit seed; falls back to $EVICALC_SEED, then 0."
    )
    common.add_argument(
        "--log-base", type=_flag(parse_log_base), default=None, help="e, 10, 2 or any positive base."
    )
    common.add_argument(
        "--thresholds",
        type=_flag(EvokingThresholds.parse),
        default=None,
        help="Evoking strength cut points, e.g. 0.1,0.35,0.65.",
    )

    parser = EvicalcArgumentParser(prog="evicalc", description="Belief-update calculus workbench")
    commands = parser.add_subparsers(dest="command", required=True, metavar="command")

    audit = commands.add_parser("audit", parents=[common], help="Audit an update measure against an axiom.")
    audit.add_argument("--measure", choices=measure_names(), default="lambda")
    audit.add_argument("--axiom", choices=AXIOMS, default=MODULARITY)
    audit.add_argument("--family", choices=scenarios.FAMILY_KINDS, default=None)
    audit.add_argument("--model", type=str, default=None, help="Model file of the explicit family.")
    audit.add_argument("--samples", type=int, default=constants.DEFAULT_SAMPLES)
    audit.add_argument("--findings", type=int, default=constants.DEFAULT_FINDINGS)
    audit.add_argument("--tol", type=float, default=None)
    audit.add_argument("--match-tol", type=float, default=constants.COLLISION_MATCH_TOLERANCE)
    audit.add_argument("--epsilon", type=float, default=constants.CF_LIMIT_EPSILON)
    audit.add_argument("--format", choices=REPORT_FORMATS, default="text")

    demo = commands.add_parser("demo", parents=[common], help="Run a canned demonstration.")
    demo.add_argument("name", choices=demo_names())
    demo.add_argument("--epsilon", type=float, default=constants.CF_LIMIT_EPSILON)
    demo.add_argument("--format", choices=REPORT_FORMATS, default="text")

    evaluate = commands.add_parser("eval", parents=[common], help="Evaluate a rulebase over a case file.")
    evaluate.add_argument("--rules", type=str, required=True)
    evaluate.add_argument("--case", type=str, required=True)
    evaluate.add_argument("--calculus", choices=CALCULI, default=None)
    evaluate.add_argument("--format", choices=TABLE_FORMATS, default="text")

    compare = commands.add_parser("compare", parents=[common], help="Compare calculi with exact enumeration.")
    compare.add_argument("--model", type=str, required=True)
    compare.add_argument("--case", type=str, default=None)
    compare.add_argument("--calculus", choices=CALCULI, default=None)
    compare.add_argument("--samples", type=int, default=constants.DEFAULT_SAMPLES)
    compare.add_argument("--format", choices=TABLE_FORMATS, default="text")
    return parser


def run(argv=None) -> int:
    """
    Runs one command and returns its exit code: 0 on success or an axiom
    that holds, 1 on usage errors, 2 on unreadable or invalid inputs and 3
    when an audited axiom is violated.
    """
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as stop:
        return stop.code if isinstance(stop.code, int) else EXIT_USAGE

    log = Logger(log_dir=args.log_dir, verbose=args.verbose)
    try:
        config = RunConfig.from_args(args)
        log.debug(f"Configuration: {config.to_dict()}")
        return COMMANDS[config.command](config, log)
    except (exceptions.EvicalcError, OSError) as err:
        log.err_critical(f"{type(err).__name__}: {err}")
        return EXIT_INPUT


def main():
    """
    The **evicalc** CLI audits belief-update calculi and evaluates rulebases.

    Example:
        Auditing likelihood ratios over the default grid.

            $ evicalc audit --measure lambda --family ci-grid --tol 1e-9

        Searching for a certainty factor collision.

            $ evicalc audit --measure cf --axiom update-property --family ci-random --seed 7 --samples 500

        Reproducing the MYCIN counterexample as JSON.

            $ evicalc demo mycin-counterexample --format json
    """
    sys.exit(run())


if __name__ == "__main__":
    main()
