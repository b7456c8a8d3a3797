"""Race model for the just-in-time key-theft attack.

A victim spending a vulnerable UTXO reveals its public key the moment
the transaction is broadcast.  An attacker who can derive the private
key fast enough broadcasts a competing, higher-fee spend of the same
UTXO; whichever transaction the next block includes wins.  With the
attacker outbidding on fees, the attacker wins exactly when the key
break finishes no later than the next block.

Two block-arrival models are provided: ``FixedInterval`` (blocks land on
a strict clock and the victim broadcasts at a uniform offset within an
interval) and ``Memoryless`` (exponential inter-block times, the usual
Poisson-mining picture).  Both default to a 600 s mean.

Randomness discipline: trials draw from a counter-based Philox stream
keyed by (seed, stream).  Trial i owns counter block i and reads the
first double of that block, so any contiguous chunk of trials can be
generated independently and merged by summing win counts, with results
bit-identical to a single serial run.
"""

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np


class InvalidClock(ValueError):
    """Effective clock speed must be positive."""


@dataclass(frozen=True)
class QuantumAttacker:
    """Key-break capability: key size, effective logical clock, and any
    fixed key-download/broadcast latency."""

    key_bits: int
    effective_clock_hz: float = 1000.0
    overhead_seconds: float = 0.0

    def __post_init__(self) -> None:
        if self.key_bits < 0:
            raise ValueError(f"key_bits must be >= 0, got {self.key_bits}")
        if self.overhead_seconds < 0:
            raise ValueError(
                f"overhead_seconds must be >= 0, got {self.overhead_seconds}"
            )


@dataclass(frozen=True)
class FixedInterval:
    """Blocks arrive on a strict clock; the victim's broadcast offset is
    uniform over one interval."""

    blocktime_seconds: float = 600.0


@dataclass(frozen=True)
class Memoryless:
    """Exponential inter-block times with the given mean."""

    mean_blocktime_seconds: float = 600.0


MiningModel = FixedInterval | Memoryless


class FeePolicy(Enum):
    ATTACKER_OUTBIDS = "attacker-outbids"
    VICTIM_WINS_TIES = "victim-wins-ties"


class Winner(Enum):
    ATTACKER = "attacker"
    VICTIM = "victim"


@dataclass(frozen=True)
class AttackScenario:
    attacker: QuantumAttacker
    mining: MiningModel
    fee_policy: FeePolicy = FeePolicy.ATTACKER_OUTBIDS


@dataclass(frozen=True)
class RaceOutcome:
    """One resolved race.  Times are seconds after the victim's broadcast."""

    winner: Winner
    reveal_time: float
    break_done_time: float
    first_block_time: float


def break_duration(attacker: QuantumAttacker) -> float:
    """Seconds to derive the private key: key_bits**2 gate cycles at the
    effective clock, plus fixed overhead."""
    if attacker.effective_clock_hz <= 0:
        raise InvalidClock(
            f"effective_clock_hz must be positive, got {attacker.effective_clock_hz}"
        )
    return attacker.key_bits**2 / attacker.effective_clock_hz + attacker.overhead_seconds


def success_probability_closed_form(scenario: AttackScenario) -> float:
    """Exact attacker-win probability for the scenario's mining model.

    FixedInterval: max(0, 1 - T/B).  Memoryless: exp(-T/B).  The two fee
    policies differ only on the zero-probability event of an exact tie,
    so the value is the same for both.
    """
    t_break = break_duration(scenario.attacker)
    mining = scenario.mining
    if isinstance(mining, FixedInterval):
        return max(0.0, 1.0 - t_break / mining.blocktime_seconds)
    return math.exp(-t_break / mining.mean_blocktime_seconds)


# Philox emits 4 doubles per counter increment; each trial owns one
# counter block and uses only its first double.
_DOUBLES_PER_BLOCK = 4


def _philox(seed: int, stream: int) -> np.random.Philox:
    entropy = seed & ((1 << 128) - 1)  # SeedSequence rejects negative ints
    key = np.random.SeedSequence((entropy, stream)).generate_state(2, np.uint64)
    return np.random.Philox(key=key)


def _trial_uniforms(seed: int, start: int, count: int, stream: int = 0) -> np.ndarray:
    bitgen = _philox(seed, stream)
    if start:
        bitgen.advance(start)  # one counter block per trial
    doubles = np.random.Generator(bitgen).random(count * _DOUBLES_PER_BLOCK)
    return doubles[::_DOUBLES_PER_BLOCK]


def _first_block_times(mining: MiningModel, uniforms: np.ndarray) -> np.ndarray:
    if isinstance(mining, FixedInterval):
        b = mining.blocktime_seconds
        return b - uniforms * b  # uniform broadcast offset in [0, B)
    b = mining.mean_blocktime_seconds
    return -b * np.log1p(-uniforms)  # inverse CDF; exactly one draw per trial


def _attacker_wins(scenario: AttackScenario, first_block: np.ndarray) -> np.ndarray:
    t_break = break_duration(scenario.attacker)
    if scenario.fee_policy is FeePolicy.ATTACKER_OUTBIDS:
        return t_break <= first_block
    return t_break < first_block


def race_once(scenario: AttackScenario, seed: int) -> RaceOutcome:
    """Resolve a single race; a pure function of (scenario, seed)."""
    uniforms = _trial_uniforms(seed, 0, 1)
    first_block = float(_first_block_times(scenario.mining, uniforms)[0])
    t_break = break_duration(scenario.attacker)
    wins = bool(_attacker_wins(scenario, np.asarray(first_block)))
    return RaceOutcome(
        winner=Winner.ATTACKER if wins else Winner.VICTIM,
        reveal_time=0.0,
        break_done_time=t_break,
        first_block_time=first_block,
    )


def race_win_count(
    scenario: AttackScenario, seed: int, start: int, stop: int, *, stream: int = 0
) -> int:
    """Attacker wins over trials [start, stop) of the (seed, stream) stream.

    Disjoint chunks sum to the full-range count, so trial batches may run
    concurrently and merge.
    """
    if not 0 <= start <= stop:
        raise ValueError(f"need 0 <= start <= stop, got [{start}, {stop})")
    if start == stop:
        return 0
    uniforms = _trial_uniforms(seed, start, stop - start, stream)
    first_block = _first_block_times(scenario.mining, uniforms)
    return int(np.count_nonzero(_attacker_wins(scenario, first_block)))


def success_probability_monte_carlo(
    scenario: AttackScenario, n_trials: int, seed: int, *, stream: int = 0
) -> tuple[float, float]:
    """Estimate the attacker-win probability and its binomial standard error."""
    if n_trials < 1:
        raise ValueError(f"n_trials must be >= 1, got {n_trials}")
    wins = race_win_count(scenario, seed, 0, n_trials, stream=stream)
    estimate = wins / n_trials
    std_error = math.sqrt(estimate * (1.0 - estimate) / n_trials)
    return estimate, std_error


def sweep(
    scenario: AttackScenario, clock_range, n_trials: int, seed: int
) -> list[dict]:
    """Closed-form and Monte Carlo win probabilities across clock speeds.

    Row i uses substream i of the master seed, so rows are independent
    and each is reproducible from (seed, row index) alone.
    """
    clocks = list(clock_range)
    if not clocks:
        raise ValueError("clock_range must be non-empty")
    rows = []
    for index, clock_hz in enumerate(clocks):
        attacker = replace(scenario.attacker, effective_clock_hz=clock_hz)
        row_scenario = replace(scenario, attacker=attacker)
        estimate, std_error = success_probability_monte_carlo(
            row_scenario, n_trials, seed, stream=index
        )
        rows.append(
            {
                "clock_hz": clock_hz,
                "break_seconds": break_duration(attacker),
                "p_closed_form": success_probability_closed_form(row_scenario),
                "p_estimate": estimate,
                "std_error": std_error,
            }
        )
    return rows
