"""Exact integer model of Bitcoin transaction weight.

Block space is measured in weight units (WU): a block holds at most
4,000,000 WU, witness bytes count 1 WU each, and most other bytes count
4 WU each.  Transactions are modelled here as ordered lists of
(field kind, byte size) entries at the granularity of the major fields,
so that the footprint of UTXO-upgrade transactions can be computed
exactly.  All arithmetic in this module is integer; nothing rounds.

The canonical single-input/single-output upgrade transaction is 163
bytes (445 WU), and the ``*_mega`` builders produce the block-filling
many-inputs/one-output variants used to bound upgrade throughput.
"""

from dataclasses import dataclass
from enum import Enum


class FieldKind(Enum):
    """Major serialization fields of a transaction."""

    VERSION = "version"
    MARKER_AND_FLAG = "marker-and-flag"
    INPUT = "input"
    OUTPUT = "output"
    WITNESS_DATA = "witness-data"
    LOCK_TIME = "lock-time"


# Bytes-to-WU conversion factor per field: witness data and the SegWit
# marker/flag pair weigh 1 WU per byte, everything else weighs 4.
SCALE_FACTORS: dict[FieldKind, int] = {
    FieldKind.VERSION: 4,
    FieldKind.MARKER_AND_FLAG: 1,
    FieldKind.INPUT: 4,
    FieldKind.OUTPUT: 4,
    FieldKind.WITNESS_DATA: 1,
    FieldKind.LOCK_TIME: 4,
}

# Byte sizes of the canonical single-input/single-output transaction.
VERSION_BYTES = 4
MARKER_AND_FLAG_BYTES = 2
INPUT_BYTES = 42
OUTPUT_BYTES = 44
WITNESS_BYTES = 67
LOCK_TIME_BYTES = 4


@dataclass(frozen=True)
class FieldEntry:
    """One serialized field: its kind and its size in bytes."""

    kind: FieldKind
    size_bytes: int

    def __post_init__(self) -> None:
        if self.size_bytes < 0:
            raise ValueError(f"size_bytes must be >= 0, got {self.size_bytes}")


@dataclass(frozen=True)
class TransactionLayout:
    """Ordered sequence of field entries describing one transaction."""

    entries: tuple[FieldEntry, ...]

    @classmethod
    def from_pairs(cls, pairs) -> "TransactionLayout":
        return cls(tuple(FieldEntry(kind, size) for kind, size in pairs))

    def __add__(self, other: "TransactionLayout") -> "TransactionLayout":
        return TransactionLayout(self.entries + other.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def total_bytes(self) -> int:
        return sum(entry.size_bytes for entry in self.entries)


@dataclass(frozen=True)
class NetworkParams:
    """Consensus-level constants the capacity math depends on.

    The header and transaction-counter reserves are recorded but left
    out of capacity computations unless ``apply_reserves`` is set: the
    default models the strict lower-bound convention where every weight
    unit of the block is available for upgrades.
    """

    block_weight_limit: int = 4_000_000
    blocktime_seconds: int = 600
    header_reserve: int = 320
    counter_reserve: int = 12
    apply_reserves: bool = False

    def __post_init__(self) -> None:
        if self.block_weight_limit <= 0:
            raise ValueError("block_weight_limit must be positive")
        if self.blocktime_seconds <= 0:
            raise ValueError("blocktime_seconds must be positive")
        if self.header_reserve < 0 or self.counter_reserve < 0:
            raise ValueError("reserves must be >= 0")

    def usable_block_weight(self) -> int:
        """Weight available for upgrades under the current reserve policy."""
        if self.apply_reserves:
            return self.block_weight_limit - self.header_reserve - self.counter_reserve
        return self.block_weight_limit


DEFAULT_PARAMS = NetworkParams()


def field_weight(size_bytes: int, kind: FieldKind) -> int:
    """Weight of one field: byte size times the field's scale factor."""
    if size_bytes < 0:
        raise ValueError(f"size_bytes must be >= 0, got {size_bytes}")
    return size_bytes * SCALE_FACTORS[kind]


def transaction_weight(layout: TransactionLayout) -> int:
    """Total weight of a layout; fields contribute independently."""
    return sum(field_weight(entry.size_bytes, entry.kind) for entry in layout.entries)


def cumulative_weights(layout: TransactionLayout) -> tuple[int, ...]:
    """Running weight totals over the layout's prefixes."""
    totals = []
    running = 0
    for entry in layout.entries:
        running += field_weight(entry.size_bytes, entry.kind)
        totals.append(running)
    return tuple(totals)


def single_in_single_out() -> TransactionLayout:
    """The canonical 163-byte / 445-WU one-input, one-output transaction."""
    return TransactionLayout.from_pairs(
        [
            (FieldKind.VERSION, VERSION_BYTES),
            (FieldKind.MARKER_AND_FLAG, MARKER_AND_FLAG_BYTES),
            (FieldKind.INPUT, INPUT_BYTES),
            (FieldKind.OUTPUT, OUTPUT_BYTES),
            (FieldKind.WITNESS_DATA, WITNESS_BYTES),
            (FieldKind.LOCK_TIME, LOCK_TIME_BYTES),
        ]
    )


def _fixed_fields() -> list[tuple[FieldKind, int]]:
    # Shared by both mega layouts: everything except inputs and witnesses.
    return [
        (FieldKind.VERSION, VERSION_BYTES),
        (FieldKind.MARKER_AND_FLAG, MARKER_AND_FLAG_BYTES),
        (FieldKind.OUTPUT, OUTPUT_BYTES),
        (FieldKind.LOCK_TIME, LOCK_TIME_BYTES),
    ]


def ecdsa_mega(n_inputs: int) -> TransactionLayout:
    """Block-filling upgrade transaction with one ECDSA witness per input.

    Costs 235 WU per input (168 input + 67 witness) on top of 210 WU of
    fixed overhead.
    """
    if n_inputs < 0:
        raise ValueError(f"n_inputs must be >= 0, got {n_inputs}")
    version, marker, output, lock_time = _fixed_fields()
    pairs = [version, marker]
    pairs.extend([(FieldKind.INPUT, INPUT_BYTES)] * n_inputs)
    pairs.append(output)
    pairs.extend([(FieldKind.WITNESS_DATA, WITNESS_BYTES)] * n_inputs)
    pairs.append(lock_time)
    return TransactionLayout.from_pairs(pairs)


def schnorr_mega(n_inputs: int) -> TransactionLayout:
    """Block-filling upgrade transaction with one aggregated Schnorr witness.

    Key aggregation collapses all witnesses into a single 67-byte
    instance, so inputs cost 168 WU each on top of 277 WU of fixed
    overhead.
    """
    if n_inputs < 0:
        raise ValueError(f"n_inputs must be >= 0, got {n_inputs}")
    version, marker, output, lock_time = _fixed_fields()
    pairs = [version, marker]
    pairs.extend([(FieldKind.INPUT, INPUT_BYTES)] * n_inputs)
    pairs.append(output)
    pairs.append((FieldKind.WITNESS_DATA, WITNESS_BYTES))
    pairs.append(lock_time)
    return TransactionLayout.from_pairs(pairs)


def canonical_layouts(n_inputs: int = 1) -> dict[str, TransactionLayout]:
    """Named reference layouts; the mega variants are built at ``n_inputs``."""
    return {
        "single-in-single-out": single_in_single_out(),
        "ecdsa-mega": ecdsa_mega(n_inputs),
        "schnorr-mega": schnorr_mega(n_inputs),
    }
