"""
Command Line Interface

Subcommands: orbit, predict, verify, tpro, render and gamma. Reports are
JSON on stdout (or --out); every failure prints one machine-parsable
``error code=... kind=... message="..."`` line on stderr and maps to the
exit status in constants.ExitCode.
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple

import yaml

from . import __version__
from .affine_lift import affine_from_window, lift_state
from .config import Config
from .constants import ExitCode, VerificationDefaults
from .dynamics import (
    State,
    omega_normalize,
    orbit_decomposition,
    orbit_size,
    state_from_dict,
    theta_power,
    toric_promotion,
    toric_promotion_orbit,
)
from .error_codes import exit_code_for, format_error_line
from .exceptions import (
    NoClosedForm,
    ToricBilliardsError,
    UsageError,
    VerificationError,
)
from .graph_core import BilliardsGraph, validate_graph
from .logging_config import log_exception, setup_logging_from_config
from .path_utils import write_output
from .predictors import cycle_invariants, predict_orbit_size
from .render import (
    RenderOptions,
    render_alcove_trajectory,
    render_coin_diagram,
    render_orbit_strip,
    render_stone_diagram,
)
from .sieving import gamma_count
from .validation import load_json_argument
from .verification import VerificationRunner

logger = logging.getLogger(__name__)

SUITES = ("forest", "cycle", "lift", "lemma", "csp", "tableaux")
DRAWINGS = ("stone", "coin", "strip", "alcoves")


@dataclass
class Command:
    """A parsed command line"""

    name: str
    target: Optional[str] = None
    graph: Optional[str] = None
    state: Optional[str] = None
    window: Optional[str] = None
    i: Optional[int] = None
    eps: Optional[int] = None
    n: Optional[int] = None
    k: Optional[int] = None
    m: Optional[int] = None
    steps: Optional[int] = None
    exhaustive: bool = False
    samples: Optional[int] = None
    seed: Optional[int] = None
    threads: Optional[int] = None
    out: Optional[str] = None
    pretty: bool = False
    format: str = "json"
    config: Optional[str] = None
    log_level: Optional[str] = None


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _positive(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid int value: {value!r}")
    if number < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value!r}")
    return number


def _orientation(value: str) -> int:
    if value not in ("1", "-1", "+1"):
        raise argparse.ArgumentTypeError(f"must be 1 or -1: {value!r}")
    return int(value)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="YAML config (default: toric.yaml)")
    common.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="Override logging.level",
    )
    common.add_argument("--out", help="Write the report to this file")
    common.add_argument(
        "--pretty", action="store_true", help="Human-readable output"
    )
    common.add_argument(
        "--threads", type=_positive, help="Worker threads for enumeration"
    )

    parser = _Parser(
        prog="toric-billiards",
        description="Toric promotion with reflections and refractions",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(
        dest="name", required=True, parser_class=_Parser
    )

    orbit = sub.add_parser(
        "orbit",
        parents=[common],
        help="Brute-force orbit size or decomposition",
    )
    orbit.add_argument("--graph", required=True, help="Graph JSON or path")
    orbit.add_argument("--state", help="State JSON or path")
    orbit.add_argument("--k", type=int, help="Power of Theta to examine")
    orbit.add_argument("--format", choices=["json", "csv"], default="json")

    predict = sub.add_parser(
        "predict", parents=[common], help="Closed-form orbit size"
    )
    predict.add_argument("--graph", required=True)
    predict.add_argument("--state", required=True)

    verify = sub.add_parser(
        "verify", parents=[common], help="Oracle-equivalence suites"
    )
    verify.add_argument("target", choices=SUITES)
    verify.add_argument("--n", type=_positive)
    verify.add_argument("--m", type=_positive, help="Largest tableau size")
    verify.add_argument("--steps", type=_positive)
    verify.add_argument("--samples", type=_positive)
    verify.add_argument("--seed", type=int)
    verify.add_argument("--exhaustive", action="store_true")

    tpro = sub.add_parser(
        "tpro", parents=[common], help="Iterate toric promotion"
    )
    tpro.add_argument("--graph", required=True)
    tpro.add_argument("--state", required=True)
    tpro.add_argument("--steps", type=int)

    render = sub.add_parser("render", parents=[common], help="SVG diagrams")
    render.add_argument("target", choices=DRAWINGS)
    render.add_argument("--graph")
    render.add_argument("--state")
    render.add_argument("--window", help="Window JSON for alcoves")
    render.add_argument("--i", type=_positive)
    render.add_argument("--eps", type=_orientation)
    render.add_argument("--steps", type=int)

    gamma = sub.add_parser(
        "gamma", parents=[common], help="Count the set Gamma_k in S_M"
    )
    gamma.add_argument("--m", type=_positive, required=True)
    gamma.add_argument("--k", type=int, required=True)
    return parser


def parse_args(argv: Optional[List[str]] = None) -> Command:
    """
    Parse a command line into a Command.

    Raises:
        UsageError: On unknown subcommands, bad or missing flags
    """
    args = build_parser().parse_args(argv)
    values = {k: v for k, v in vars(args).items() if v is not None}
    cmd = Command(**values)

    if cmd.name == "render":
        needs_graph = cmd.target in ("coin", "strip", "alcoves")
        if needs_graph and not cmd.graph:
            raise UsageError(f"render {cmd.target} requires --graph")
        if cmd.target == "alcoves" and not (cmd.window or cmd.state):
            raise UsageError("render alcoves requires --window or --state")
        if cmd.target != "alcoves" and not cmd.state:
            raise UsageError(f"render {cmd.target} requires --state")
    if cmd.steps is not None and cmd.steps < 0:
        raise UsageError("--steps must be non-negative")
    return cmd


# =============================================================================
# Handlers
# =============================================================================


def _load_graph(cmd: Command) -> BilliardsGraph:
    return validate_graph(load_json_argument(cmd.graph))


def _load_state(cmd: Command, n: Optional[int]) -> State:
    return state_from_dict(load_json_argument(cmd.state), n)


def _orbit(cmd: Command, config: Config) -> Tuple[Any, ExitCode]:
    g = _load_graph(cmd)
    if cmd.state:
        s = _load_state(cmd, g.n)
        payload: Dict[str, Any] = {
            "state": s.to_dict(),
            "size": orbit_size(g, s),
        }
        if cmd.k is not None:
            image = theta_power(g, s, cmd.k, config.power_threshold)
            payload["power"] = {"k": cmd.k, "state": image.to_dict()}
        return payload, ExitCode.OK

    report = orbit_decomposition(g, config.threads, config.max_n)
    if cmd.format == "csv":
        return report.to_csv(), ExitCode.OK
    payload = report.to_dict()
    if cmd.k is not None:
        payload["k"] = cmd.k
        payload["fixed_points"] = report.fixed_points(cmd.k)
        payload["order"] = report.order_of_power(cmd.k)
    return payload, ExitCode.OK


def _predict(cmd: Command, config: Config) -> Tuple[Any, ExitCode]:
    g = _load_graph(cmd)
    s = _load_state(cmd, g.n)
    try:
        prediction = predict_orbit_size(g, s)
    except NoClosedForm as e:
        return (
            {
                "size": orbit_size(g, s),
                "method": "brute-force",
                "note": str(e),
            },
            ExitCode.OK,
        )
    payload = prediction.to_dict()
    if prediction.method == "cycle":
        payload["invariants"] = cycle_invariants(
            g, omega_normalize(s).sigma
        ).to_dict()
    return payload, ExitCode.OK


def _verify(cmd: Command, config: Config) -> Tuple[Any, ExitCode]:
    runner = VerificationRunner(
        config.seed, config.threads, config.max_n, config.root_tolerance
    )
    target = cmd.target
    if target == "forest":
        result = runner.verify_forest(
            cmd.n or VerificationDefaults.FOREST_N,
            cmd.exhaustive,
            cmd.samples or config.samples,
        )
    elif target == "cycle":
        result = runner.verify_cycle(
            cmd.n or VerificationDefaults.CYCLE_N,
            cmd.exhaustive,
            cmd.samples or config.samples,
        )
    elif target == "lift":
        result = runner.verify_lift(
            (cmd.n,) if cmd.n else (3, 4, 5), cmd.steps or config.lift_steps
        )
    elif target == "lemma":
        result = runner.verify_lemma(
            cmd.samples or config.lemma_trees, cmd.n or 7
        )
    elif target == "csp":
        result = runner.verify_csp(cmd.n or 4)
    else:
        result = runner.verify_tableaux(cmd.m or 8)
    return result.to_dict(), ExitCode.OK if result.ok else ExitCode.MISMATCH


def _tpro(cmd: Command, config: Config) -> Tuple[Any, ExitCode]:
    g = _load_graph(cmd)
    sigma = _load_state(cmd, g.n).sigma
    if cmd.steps is None:
        labelings = toric_promotion_orbit(g, sigma)
        return (
            {
                "size": len(labelings),
                "orbit": [list(x.labels) for x in labelings],
            },
            ExitCode.OK,
        )
    labelings = [sigma]
    for _ in range(cmd.steps):
        labelings.append(toric_promotion(g, labelings[-1]))
    return {"labelings": [list(x.labels) for x in labelings]}, ExitCode.OK


def _render(cmd: Command, config: Config) -> Tuple[Any, ExitCode]:
    opts = RenderOptions.from_config(config)
    g = _load_graph(cmd) if cmd.graph else None
    if cmd.target == "stone":
        return render_stone_diagram(_load_state(cmd, None), opts), ExitCode.OK
    if cmd.target == "coin":
        return render_coin_diagram(g, _load_state(cmd, g.n), opts), ExitCode.OK
    if cmd.target == "strip":
        return render_orbit_strip(g, _load_state(cmd, g.n), opts), ExitCode.OK

    if cmd.window:
        start = (affine_from_window(load_json_argument(cmd.window)), 1, 1)
    else:
        start = tuple(lift_state(_load_state(cmd, g.n)))
    u, i, eps = start
    start = (u, cmd.i or i, cmd.eps or eps)
    steps = cmd.steps if cmd.steps is not None else 10
    return render_alcove_trajectory(g, start, steps, opts), ExitCode.OK


def _gamma(cmd: Command, config: Config) -> Tuple[Any, ExitCode]:
    count = gamma_count(cmd.m, cmd.k, config.max_gamma_m)
    return {"M": cmd.m, "k": cmd.k, "gamma": count}, ExitCode.OK


_HANDLERS: Dict[str, Callable[[Command, Config], Tuple[Any, ExitCode]]] = {
    "orbit": _orbit,
    "predict": _predict,
    "verify": _verify,
    "tpro": _tpro,
    "render": _render,
    "gamma": _gamma,
}


def _pretty(payload: Any) -> str:
    if isinstance(payload, dict) and "orbits" in payload:
        lines = [f"{'size':>10}  {'count':>10}"]
        lines.extend(
            f"{row['size']:>10}  {row['count']:>10}"
            for row in payload["orbits"]
        )
        lines.append(f"{'total':>10}  {payload['total']:>10}")
        return "\n".join(lines)
    return yaml.safe_dump(payload, sort_keys=False, default_flow_style=None)


def format_payload(payload: Any, pretty: bool = False) -> str:
    """SVG and CSV text pass through; other payloads become JSON or YAML."""
    if isinstance(payload, str):
        return payload
    if pretty:
        return _pretty(payload)
    return json.dumps(payload, separators=(",", ":"))


def run(cmd: Command) -> int:
    """
    Execute a parsed command.

    Returns:
        Process exit status (constants.ExitCode)
    """
    try:
        config = Config.discover(cmd.config)
        config.override(threads=cmd.threads, seed=cmd.seed)
        setup_logging_from_config(config, cmd.log_level)
        logger.debug("Running %s with %r", cmd.name, config)

        payload, status = _HANDLERS[cmd.name](cmd, config)
        write_output(format_payload(payload, cmd.pretty), cmd.out)
        if status != ExitCode.OK:
            mismatch = VerificationError(f"{cmd.target} found mismatches")
            print(format_error_line(mismatch), file=sys.stderr)
        return int(status)
    except ToricBilliardsError as e:
        print(format_error_line(e), file=sys.stderr)
        return int(exit_code_for(e))
    except Exception as e:
        log_exception(logger, f"{cmd.name} failed", e)
        print(format_error_line(e), file=sys.stderr)
        return int(exit_code_for(e))


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point for the toric-billiards command"""
    try:
        cmd = parse_args(argv)
    except UsageError as e:
        print(format_error_line(e), file=sys.stderr)
        return int(ExitCode.USAGE)
    return run(cmd)
