"""Error hierarchy for the ledger engine.

Every rejected operation raises a LedgerError subclass whose class name is
the machine-readable error code surfaced by the HTTP service and the CLI.
"""

from __future__ import annotations


class LedgerError(Exception):
    """Base class; ``code`` is the stable machine-readable name."""

    @property
    def code(self) -> str:
        return type(self).__name__


# -- validation / plumbing ---------------------------------------------------

class ValidationError(LedgerError):
    pass


class MalformedEnvelope(LedgerError):
    pass


class TimestampRegression(LedgerError):
    pass


class Overflow(LedgerError):
    pass


class ZeroAmount(LedgerError):
    pass


class ZeroParameter(LedgerError):
    pass


class ZeroPrice(LedgerError):
    pass


class IoError(LedgerError):
    pass


class CorruptJournal(LedgerError):
    pass


class ConfigError(LedgerError):
    pass


class InvariantViolation(LedgerError):
    pass


# -- accounts and token accounting -------------------------------------------

class DuplicateAccount(LedgerError):
    pass


class UnknownAccount(LedgerError):
    pass


class InsufficientBalance(LedgerError):
    pass


class InsufficientAllowance(LedgerError):
    pass


class SelfTransfer(LedgerError):
    pass


# -- crowdsale ----------------------------------------------------------------

class CampaignAlreadyOpen(LedgerError):
    pass


class CampaignClosed(LedgerError):
    pass


class NoCampaign(LedgerError):
    pass


class AlreadyClosed(LedgerError):
    pass


class UnknownPost(LedgerError):
    pass


class InsufficientFunds(LedgerError):
    pass


class SelfDonation(LedgerError):
    pass


class InsufficientEscrow(LedgerError):
    pass


# -- artifacts ----------------------------------------------------------------

class NotBeneficiary(LedgerError):
    pass


class UnknownArtifact(LedgerError):
    pass


class AlreadyRemoved(LedgerError):
    pass


class NotOnSale(LedgerError):
    pass


class InsufficientBucks(LedgerError):
    pass


class SupplyExhausted(LedgerError):
    pass


class WrongDomain(LedgerError):
    """Tokens of one beneficiary used against another's registry.

    Unreachable through the public operation surface (token domains are
    keyed by beneficiary), kept as a named code for defensive checks.
    """


# -- governance ---------------------------------------------------------------

class UnknownProposal(LedgerError):
    pass


class ProposalClosed(LedgerError):
    pass


class NotMember(LedgerError):
    pass


class DuplicatePrice(LedgerError):
    pass


class UnknownSuggestion(LedgerError):
    pass


class TooEarly(LedgerError):
    pass


class NotAuthorized(LedgerError):
    pass
