"""Per-beneficiary token accounting: Likoin and Buck.

Each beneficiary owns one TokenDomain holding both token supplies. Likoins
are mintable (crowdsale) and transferable; Bucks exist only by converting
Likoins and can never move between accounts, only burn on artifact
purchase. Converted Likoins are not destroyed: they are redistributed
pro-rata over the remaining holders, which is what makes holding worthwhile.

Conservation contract: sum(likoin_balances) + reserve == likoin_total and
sum(buck_balances) == buck_total after every operation, exactly. Maps never
hold zero values.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    InsufficientAllowance,
    InsufficientBalance,
    SelfTransfer,
    UnknownAccount,
)
from .units import check_amount, checked_add, checked_mul

LIKOIN = "likoin"
BUCK = "buck"


@dataclass
class ConversionReceipt:
    converter: str
    beneficiary: str
    likoin_in: int
    buck_out: int
    distribution: dict[str, int]
    dust: int


@dataclass
class TokenDomain:
    """One beneficiary's Likoin/Buck books. Isolated from every other domain."""

    beneficiary: str
    likoin_balances: dict[str, int] = field(default_factory=dict)
    likoin_total: int = 0
    buck_balances: dict[str, int] = field(default_factory=dict)
    buck_total: int = 0
    # allowances[owner][spender] -> amount, overwrite semantics
    allowances: dict[str, dict[str, int]] = field(default_factory=dict)
    reserve: int = 0
    buck_rate: int = 1

    # -- reads -----------------------------------------------------------

    def balance_of(self, account: str, kind: str = LIKOIN) -> int:
        """Zero for unknown accounts; never raises."""
        book = self.likoin_balances if kind == LIKOIN else self.buck_balances
        return book.get(account, 0)

    def allowance(self, owner: str, spender: str) -> int:
        return self.allowances.get(owner, {}).get(spender, 0)

    def holders(self) -> list[str]:
        return sorted(self.likoin_balances)

    # -- internal balance plumbing (keeps the no-zero-values rule) --------

    def _credit(self, book: dict[str, int], account: str, amount: int) -> None:
        if amount:
            book[account] = book.get(account, 0) + amount

    def _debit(self, book: dict[str, int], account: str, amount: int) -> None:
        remaining = book.get(account, 0) - amount
        if remaining:
            book[account] = remaining
        else:
            book.pop(account, None)

    # -- mutations ---------------------------------------------------------

    def mint_likoin(self, to: str, amount: int) -> None:
        """Crowdsale-only entry point; the sole Likoin supply source."""
        check_amount(amount, allow_zero=False)
        self.likoin_total = checked_add(self.likoin_total, amount)
        self._credit(self.likoin_balances, to, amount)

    def transfer_likoin(self, frm: str, to: str, amount: int) -> None:
        check_amount(amount, allow_zero=False)
        if frm == to:
            raise SelfTransfer(f"{frm} cannot transfer to itself")
        if self.likoin_balances.get(frm, 0) < amount:
            raise InsufficientBalance(
                f"{frm} holds {self.likoin_balances.get(frm, 0)}, needs {amount}"
            )
        self._debit(self.likoin_balances, frm, amount)
        self._credit(self.likoin_balances, to, amount)

    def approve(self, owner: str, spender: str, amount: int) -> None:
        check_amount(amount)
        per_owner = self.allowances.setdefault(owner, {})
        if amount:
            per_owner[spender] = amount
        else:
            per_owner.pop(spender, None)
        if not per_owner:
            self.allowances.pop(owner, None)

    def transfer_from(self, spender: str, owner: str, to: str, amount: int) -> None:
        check_amount(amount, allow_zero=False)
        allowed = self.allowance(owner, spender)
        if allowed < amount:
            raise InsufficientAllowance(
                f"{spender} allowed {allowed} by {owner}, needs {amount}"
            )
        if self.likoin_balances.get(owner, 0) < amount:
            raise InsufficientBalance(
                f"{owner} holds {self.likoin_balances.get(owner, 0)}, needs {amount}"
            )
        if owner == to:
            raise SelfTransfer(f"{owner} cannot transfer to itself")
        self.approve(owner, spender, allowed - amount)
        self._debit(self.likoin_balances, owner, amount)
        self._credit(self.likoin_balances, to, amount)

    def convert_likoin_to_buck(self, converter: str, amount: int) -> ConversionReceipt:
        """Convert Likoins to Bucks, redistributing the Likoins to holders.

        The converted amount is split pro-rata over the post-deduction
        balances of all holders (converter's residual included, reserve
        excluded) using the largest-remainder method, ties broken by
        ascending account id. likoin_total is unchanged; Bucks are minted
        at the domain's buck_rate. Irreversible by construction: nothing
        turns Bucks back into Likoins.
        """
        check_amount(amount, allow_zero=False)
        if self.likoin_balances.get(converter, 0) < amount:
            raise InsufficientBalance(
                f"{converter} holds {self.likoin_balances.get(converter, 0)}, "
                f"needs {amount}"
            )
        buck_out = checked_mul(amount, self.buck_rate)
        checked_add(self.buck_total, buck_out)  # validate before any mutation

        # Plan the whole distribution before touching any balance.
        post = dict(self.likoin_balances)
        residual = post[converter] - amount
        if residual:
            post[converter] = residual
        else:
            del post[converter]

        distribution: dict[str, int] = {}
        total = sum(post.values())
        if total == 0:
            dust = amount
        else:
            dust = 0
            remainders: list[tuple[int, str]] = []
            assigned = 0
            for holder in sorted(post):
                num = amount * post[holder]
                base, rem = divmod(num, total)
                if base:
                    distribution[holder] = base
                    assigned += base
                if rem:
                    remainders.append((-rem, holder))
            remainders.sort()
            for _, holder in remainders[: amount - assigned]:
                distribution[holder] = distribution.get(holder, 0) + 1

        # Commit.
        self._debit(self.likoin_balances, converter, amount)
        for holder in sorted(distribution):
            self._credit(self.likoin_balances, holder, distribution[holder])
        self.reserve += dust
        self.buck_total += buck_out
        self._credit(self.buck_balances, converter, buck_out)

        return ConversionReceipt(
            converter=converter,
            beneficiary=self.beneficiary,
            likoin_in=amount,
            buck_out=buck_out,
            distribution=distribution,
            dust=dust,
        )

    def burn_buck(self, account: str, amount: int) -> None:
        """Artifact-purchase sink; the only way Bucks leave circulation."""
        check_amount(amount, allow_zero=False)
        if self.buck_balances.get(account, 0) < amount:
            raise InsufficientBalance(
                f"{account} holds {self.buck_balances.get(account, 0)} bucks, "
                f"needs {amount}"
            )
        self._debit(self.buck_balances, account, amount)
        self.buck_total -= amount

    # -- integrity ---------------------------------------------------------

    def check_conservation(self) -> None:
        """Brute-force the conservation sums; raises AssertionError on drift."""
        likoin_sum = sum(self.likoin_balances.values())
        assert likoin_sum + self.reserve == self.likoin_total, (
            f"likoin drift in {self.beneficiary}: "
            f"{likoin_sum} + {self.reserve} != {self.likoin_total}"
        )
        buck_sum = sum(self.buck_balances.values())
        assert buck_sum == self.buck_total, (
            f"buck drift in {self.beneficiary}: {buck_sum} != {self.buck_total}"
        )
        assert all(v > 0 for v in self.likoin_balances.values())
        assert all(v > 0 for v in self.buck_balances.values())


def require_account(accounts: dict, account_id: str) -> None:
    if account_id not in accounts:
        raise UnknownAccount(f"no such account {account_id!r}")
