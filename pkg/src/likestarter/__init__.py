"""LikeStarter: a deterministic two-token crowdfunding DAO engine.

Donations ("likes") mint per-beneficiary Likoins; Likoins convert
irreversibly into Bucks while redistributing themselves pro-rata over the
remaining holders; Bucks buy artifacts whose prices are set by
snapshot-weighted votes. All state changes flow through an append-only,
replayable transaction journal.
"""

from .config import EngineConfig
from .engine import Engine, Envelope, Event
from .errors import LedgerError
from .ledger import ConversionReceipt, TokenDomain
from .oracle import distribution_oracle
from .state import LedgerState, genesis, state_hash
from .units import ATTO, MAX_AMOUNT, format_units, parse_atto, parse_units

__version__ = "0.1.0"

__all__ = [
    "ATTO",
    "MAX_AMOUNT",
    "ConversionReceipt",
    "Engine",
    "EngineConfig",
    "Envelope",
    "Event",
    "LedgerError",
    "LedgerState",
    "TokenDomain",
    "distribution_oracle",
    "format_units",
    "genesis",
    "parse_atto",
    "parse_units",
    "state_hash",
    "__version__",
]
