"""Command line front end and report rendering.

Four subcommands, one per model surface:

  capacity   per-block upgrade capacities for each packing strategy
  plan       migration duration lower bounds, or throttled schedules
  attack     key-theft race probabilities (closed form and Monte Carlo)
  impact     post-quantum signature weight and throughput cost

Reports render as CSV, JSON, or a Markdown table.  Duration cells carry
exact ``Fraction`` values until rendering: CSV and Markdown print
hours/days half-up at 2 decimals, JSON keeps full precision.  Output is
deterministic, so identical flags (and seed) give byte-identical bytes.
The CLI does no arithmetic of its own beyond the hours-to-days unit
conversion; every other cell comes straight from a library call.

Exit codes: 0 success, 1 bad usage or bad values, 2 I/O failure.
"""

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import replace
from enum import Enum
from fractions import Fraction
from numbers import Rational

from .weight_model import DEFAULT_PARAMS, NetworkParams
from .block_packer import (
    PackingMode,
    UpgradeScheme,
    fixed_overhead,
    per_block_capacity,
    per_input_weight,
    standalone_upgrade_weight,
)
from .migration_planner import (
    DEFAULT_SNAPSHOT,
    EveryKthBlock,
    FractionOfEachBlock,
    UtxoSnapshot,
    bandwidth_table,
    mixed_duration,
    throttled_schedule,
)
from .jit_attack_sim import (
    AttackScenario,
    FixedInterval,
    Memoryless,
    QuantumAttacker,
    sweep,
)
from .pq_impact import (
    PqScheme,
    post_upgrade_transaction_weight,
    signature_ratio,
    throughput_slowdown,
    transactions_per_block,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2

SEED_ENV_VAR = "QSAFE_SEED"
DEFAULT_SEED = 42

DEFAULT_BANDWIDTHS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))
DEFAULT_CLOCKS = (1000.0,)
DEFAULT_TRIALS = 100_000


class ParseError(ValueError):
    """A command line or input file value could not be parsed."""


class ValidationError(ValueError):
    """A parsed value is outside its allowed range."""


# --- report rendering -------------------------------------------------


class ReportFormat(Enum):
    CSV = "csv"
    JSON = "json"
    MARKDOWN = "md"


def round_half_up(value, decimals: int = 2) -> str:
    """Render a number with halves rounded up (toward +infinity).

    Exact for int/Fraction inputs; floats are taken at their binary
    value.  Python's ``round`` and ``format`` both round half to even,
    which would misprint table cells landing exactly on a half.
    """
    if decimals < 0:
        raise ValueError(f"decimals must be >= 0, got {decimals}")
    scaled = Fraction(value) * 10**decimals
    n, d = scaled.numerator, scaled.denominator
    units = (2 * n + d) // (2 * d)  # floor(scaled + 1/2)
    sign = "-" if units < 0 else ""
    units = abs(units)
    if decimals == 0:
        return f"{sign}{units}"
    whole, frac = divmod(units, 10**decimals)
    return f"{sign}{whole}.{frac:0{decimals}d}"


def _columns_for(rows, columns):
    if columns is not None:
        return list(columns)
    if not rows:
        raise ValueError("columns are required when rows is empty")
    return list(rows[0].keys())


def _cell_text(value, decimals) -> str:
    if decimals is not None:
        return round_half_up(value, decimals)
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, Rational) and not isinstance(value, int):
        return str(float(value))
    return str(value)


def _cell_json(value):
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Rational) and not isinstance(value, int):
        return float(value)
    return value


def render_report(rows, fmt, columns=None, round_to=None) -> str:
    """Render rows as text in the requested format, trailing newline included.

    ``round_to`` maps column names to decimal places for the textual
    formats; JSON ignores it and keeps full numeric precision.
    """
    fmt = ReportFormat(fmt)
    cols = _columns_for(rows, columns)
    round_to = dict(round_to or {})

    if fmt is ReportFormat.JSON:
        payload = [{col: _cell_json(row[col]) for col in cols} for row in rows]
        return json.dumps(payload, indent=2) + "\n"

    cells = [[_cell_text(row[col], round_to.get(col)) for col in cols] for row in rows]
    if fmt is ReportFormat.CSV:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(cols)
        writer.writerows(cells)
        return buffer.getvalue()

    lines = ["| " + " | ".join(cols) + " |"]
    lines.append("| " + " | ".join("---" for _ in cols) + " |")
    lines.extend("| " + " | ".join(row) + " |" for row in cells)
    return "\n".join(lines) + "\n"


def emit_report(rows, fmt, columns=None, round_to=None, destination=None) -> str:
    """Render and, when a destination path is given, also write the file.

    The file is written with ``newline=""`` so its bytes match the
    returned string exactly on every platform.
    """
    text = render_report(rows, fmt, columns=columns, round_to=round_to)
    if destination is not None:
        with open(destination, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    return text


# --- input parsing ----------------------------------------------------


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; usage problems here are
    # exit 1, with 2 reserved for I/O, so route errors through ParseError.
    def error(self, message):
        raise ParseError(f"{message}\n{self.format_usage().rstrip()}")


# argparse replaces ValueError messages from type= callbacks with a
# generic one; ArgumentTypeError text survives verbatim.
def _parse_bandwidth(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bandwidth: not a number: {text!r}") from exc
    if not 0 < value <= 1:
        raise argparse.ArgumentTypeError(f"bandwidth must be in (0, 1], got {text}")
    return value


def _parse_fraction_01(text: str, field: str) -> float:
    try:
        value = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{field}: not a number: {text!r}") from exc
    if not 0 <= value <= 1:
        raise argparse.ArgumentTypeError(f"{field} must be in [0, 1], got {text}")
    return value


def load_snapshot(path: str | None) -> UtxoSnapshot:
    """Read a UTXO snapshot from a JSON file, or return the built-in one.

    Expected shape: an object with integer ``total_utxos`` (required),
    optional ``schnorr_fraction`` in [0, 1], optional ``as_of`` string.
    """
    if path is None:
        return DEFAULT_SNAPSHOT
    with open(path, encoding="utf-8") as handle:
        try:
            payload = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ParseError(f"snapshot {path}: invalid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise ParseError(f"snapshot {path}: expected a JSON object")
    if "total_utxos" not in payload:
        raise ParseError(f"snapshot {path}: missing required field total_utxos")
    total = payload["total_utxos"]
    if isinstance(total, bool) or not isinstance(total, int):
        raise ParseError(f"snapshot {path}: total_utxos must be an integer")
    fraction = payload.get("schnorr_fraction", 0.0)
    if isinstance(fraction, bool) or not isinstance(fraction, (int, float)):
        raise ParseError(f"snapshot {path}: schnorr_fraction must be a number")
    try:
        return UtxoSnapshot(
            as_of=str(payload.get("as_of", "unspecified")),
            total=total,
            schnorr_fraction=float(fraction),
        )
    except ValueError as exc:
        raise ValidationError(f"snapshot {path}: {exc}") from exc


def _resolve_seed(flag_value: int | None) -> int:
    if flag_value is not None:
        return flag_value
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError as exc:
        raise ParseError(f"{SEED_ENV_VAR}: not an integer: {raw!r}") from exc


def _params(args) -> NetworkParams:
    if getattr(args, "include_reserves", False):
        return replace(DEFAULT_PARAMS, apply_reserves=True)
    return DEFAULT_PARAMS


# --- subcommand handlers ----------------------------------------------


def _cmd_capacity(args):
    params = _params(args)
    rows = []
    for scheme, label in (
        (UpgradeScheme.ECDSA_SEGWIT, "ecdsa-mega"),
        (UpgradeScheme.SCHNORR_TAPROOT, "schnorr-mega"),
    ):
        rows.append(
            {
                "strategy": label,
                "per_input_wu": per_input_weight(scheme),
                "overhead_wu": fixed_overhead(scheme),
                "utxos_per_block": per_block_capacity(
                    scheme, PackingMode.MEGA_TRANSACTION, params
                ),
            }
        )
    rows.append(
        {
            "strategy": "one-per-tx",
            "per_input_wu": standalone_upgrade_weight(),
            "overhead_wu": 0,
            "utxos_per_block": per_block_capacity(
                UpgradeScheme.ECDSA_SEGWIT, PackingMode.ONE_PER_TRANSACTION, params
            ),
        }
    )
    columns = ["strategy", "per_input_wu", "overhead_wu", "utxos_per_block"]
    return rows, columns, None


def _schedule_rows(snapshot, bandwidths, style_name, params):
    rows = []
    for scheme in (UpgradeScheme.ECDSA_SEGWIT, UpgradeScheme.SCHNORR_TAPROOT):
        for bandwidth in bandwidths:
            if style_name == "k":
                if bandwidth.numerator != 1:
                    raise ValidationError(
                        "bandwidth: every-kth scheduling needs a unit fraction "
                        f"(1/k), got {bandwidth}"
                    )
                style = EveryKthBlock(bandwidth.denominator)
            else:
                style = FractionOfEachBlock(bandwidth)
            timeline = throttled_schedule(snapshot, scheme, style, params)
            hours = timeline.duration_hours
            rows.append(
                {
                    "scheme": scheme.value,
                    "style": style_name,
                    "bandwidth": bandwidth,
                    "upgrade_blocks": timeline.upgrade_blocks,
                    "blocks_elapsed": timeline.blocks_elapsed,
                    "duration_hours": hours,
                    "duration_days": hours / 24,
                }
            )
    columns = [
        "scheme",
        "style",
        "bandwidth",
        "upgrade_blocks",
        "blocks_elapsed",
        "duration_hours",
        "duration_days",
    ]
    return rows, columns, {"duration_hours": 2, "duration_days": 2}


def _cmd_plan(args):
    params = _params(args)
    snapshot = load_snapshot(args.snapshot)
    if args.schnorr_fraction is not None:
        snapshot = replace(snapshot, schnorr_fraction=args.schnorr_fraction)
    bandwidths = args.bandwidth
    if args.schedule is not None:
        if bandwidths is None:
            raise ParseError("--schedule requires an explicit --bandwidth")
        return _schedule_rows(snapshot, bandwidths, args.schedule, params)
    if bandwidths is None:
        bandwidths = list(DEFAULT_BANDWIDTHS)
    rows = bandwidth_table(snapshot, bandwidths, params)
    columns = ["bandwidth", "ecdsa_hours", "ecdsa_days", "schnorr_hours", "schnorr_days"]
    round_to = {col: 2 for col in columns[1:]}
    if Fraction(snapshot.schnorr_fraction) > 0:
        # A mixed pool interpolates the two pure bounds.
        for row, bandwidth in zip(rows, bandwidths):
            hours = mixed_duration(snapshot, bandwidth, params)
            row["mixed_hours"] = hours
            row["mixed_days"] = hours / 24
        columns += ["mixed_hours", "mixed_days"]
        round_to.update({"mixed_hours": 2, "mixed_days": 2})
    return rows, columns, round_to


def _cmd_attack(args):
    if args.trials < 1:
        raise ValidationError(f"trials must be >= 1, got {args.trials}")
    if args.key_bits < 0:
        raise ValidationError(f"key-bits must be >= 0, got {args.key_bits}")
    if args.overhead < 0:
        raise ValidationError(f"overhead must be >= 0, got {args.overhead}")
    clocks = args.clock_hz if args.clock_hz is not None else list(DEFAULT_CLOCKS)
    for clock in clocks:
        if clock <= 0:
            raise ValidationError(f"clock-hz must be positive, got {clock}")
    seed = _resolve_seed(args.seed)
    mining = FixedInterval() if args.mining == "fixed" else Memoryless()
    scenario = AttackScenario(
        attacker=QuantumAttacker(
            key_bits=args.key_bits, overhead_seconds=args.overhead
        ),
        mining=mining,
    )
    rows = []
    for result in sweep(scenario, clocks, args.trials, seed):
        rows.append(
            {
                "mining": args.mining,
                "key_bits": args.key_bits,
                "clock_hz": result["clock_hz"],
                "overhead_seconds": args.overhead,
                "break_seconds": result["break_seconds"],
                "p_closed_form": result["p_closed_form"],
                "p_estimate": result["p_estimate"],
                "std_error": result["std_error"],
                "trials": args.trials,
                "seed": seed,
            }
        )
    columns = [
        "mining",
        "key_bits",
        "clock_hz",
        "overhead_seconds",
        "break_seconds",
        "p_closed_form",
        "p_estimate",
        "std_error",
        "trials",
        "seed",
    ]
    return rows, columns, None


def _cmd_impact(args):
    params = _params(args)
    rows = []
    for scheme in (
        PqScheme.CRYSTALS_DILITHIUM,
        PqScheme.FALCON,
        PqScheme.SPHINCS_PLUS,
    ):
        rows.append(
            {
                "scheme": scheme.value,
                "signature_bits": scheme.signature_bits,
                "signature_ratio": signature_ratio(scheme),
                "tx_weight_wu": post_upgrade_transaction_weight(scheme),
                "tx_per_block": transactions_per_block(scheme, params),
                "weight_slowdown": throughput_slowdown(scheme, params),
            }
        )
    columns = [
        "scheme",
        "signature_bits",
        "signature_ratio",
        "tx_weight_wu",
        "tx_per_block",
        "weight_slowdown",
    ]
    return rows, columns, None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qsafe", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument(
            "--format", choices=["csv", "json", "md"], default="csv",
            help="output format (default: csv)",
        )
        p.add_argument("--out", metavar="PATH", help="write output to a file")

    p_capacity = sub.add_parser(
        "capacity", help="per-block upgrade capacity by packing strategy"
    )
    p_capacity.add_argument(
        "--include-reserves", action="store_true",
        help="subtract header and counter reserves from the block limit",
    )
    add_common(p_capacity)
    p_capacity.set_defaults(handler=_cmd_capacity)

    p_plan = sub.add_parser(
        "plan", help="migration duration bounds and throttled schedules"
    )
    p_plan.add_argument("--snapshot", metavar="PATH", help="UTXO snapshot JSON file")
    p_plan.add_argument(
        "--bandwidth", action="append", type=_parse_bandwidth, metavar="FRACTION",
        help="block share in (0, 1]; repeatable (default: 1/4 1/2 3/4 1)",
    )
    p_plan.add_argument(
        "--schnorr-fraction", type=lambda s: _parse_fraction_01(s, "schnorr-fraction"),
        metavar="F", help="override the snapshot's key-aggregable share",
    )
    p_plan.add_argument(
        "--schedule", choices=["k", "fraction"],
        help="emit a throttled schedule instead of lower bounds "
        "(k: upgrade every k-th block; fraction: share of each block)",
    )
    p_plan.add_argument(
        "--include-reserves", action="store_true",
        help="subtract header and counter reserves from the block limit",
    )
    add_common(p_plan)
    p_plan.set_defaults(handler=_cmd_plan)

    p_attack = sub.add_parser(
        "attack", help="key-theft race win probabilities"
    )
    p_attack.add_argument("--key-bits", type=int, default=256)
    p_attack.add_argument(
        "--clock-hz", action="append", type=float, metavar="HZ",
        help="effective logical clock; repeatable (default: 1000)",
    )
    p_attack.add_argument(
        "--overhead", type=float, default=0.0, metavar="SECONDS",
        help="fixed key-extraction overhead (default: 0)",
    )
    p_attack.add_argument(
        "--mining", choices=["fixed", "memoryless"], default="memoryless",
        help="block arrival model (default: memoryless)",
    )
    p_attack.add_argument(
        "--trials", type=int, default=DEFAULT_TRIALS,
        help=f"Monte Carlo trials per row (default: {DEFAULT_TRIALS})",
    )
    p_attack.add_argument(
        "--seed", type=int,
        help=f"RNG seed (default: ${SEED_ENV_VAR} or {DEFAULT_SEED})",
    )
    add_common(p_attack)
    p_attack.set_defaults(handler=_cmd_attack)

    p_impact = sub.add_parser(
        "impact", help="post-quantum signature throughput impact"
    )
    p_impact.add_argument(
        "--include-reserves", action="store_true",
        help="subtract header and counter reserves from the block limit",
    )
    add_common(p_impact)
    p_impact.set_defaults(handler=_cmd_impact)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except ValueError as exc:
        print(f"qsafe: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        rows, columns, round_to = args.handler(args)
        text = emit_report(
            rows, args.format, columns=columns, round_to=round_to,
            destination=args.out,
        )
    except OSError as exc:
        print(f"qsafe: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"qsafe: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out is None:
        sys.stdout.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
