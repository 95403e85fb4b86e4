"""Reference pro-rata distributor in exact rational arithmetic.

Independent of the integer engine in ledger.py on purpose: tests compare the
two outputs and the analyzer uses this side to re-derive what a conversion
should have paid out. Keep it slow and obviously correct.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InsufficientBalance, ZeroAmount


def distribution_oracle(
    balances: dict[str, int], converter: str, amount: int
) -> dict[str, int]:
    """Exact-rational largest-remainder split of ``amount`` over holders.

    ``balances`` are pre-deduction Likoin balances. The converter's deducted
    residual participates; holders at zero after deduction do not. Ties in
    the remainder rank break by ascending account id. Returns only positive
    assignments; sum(result) + dust == amount with dust nonzero only when no
    holder remains.
    """
    if amount <= 0:
        raise ZeroAmount("conversion amount must be positive")
    if balances.get(converter, 0) < amount:
        raise InsufficientBalance(f"{converter} cannot convert {amount}")

    post = {h: b for h, b in balances.items() if h != converter and b > 0}
    residual = balances[converter] - amount
    if residual > 0:
        post[converter] = residual

    total = sum(post.values())
    if total == 0:
        return {}

    shares = {h: Fraction(amount) * post[h] / total for h in post}
    floors = {h: int(shares[h]) for h in post}  # Fraction truncates toward zero
    leftover = amount - sum(floors.values())
    by_remainder = sorted(post, key=lambda h: (floors[h] - shares[h], h))
    for h in by_remainder[:leftover]:
        floors[h] += 1
    return {h: v for h, v in sorted(floors.items()) if v > 0}


def exact_share(
    balances: dict[str, int], converter: str, recipient: str, amount: int
) -> Fraction:
    """The unrounded rational share a recipient is owed for one conversion."""
    post = {h: b for h, b in balances.items() if h != converter and b > 0}
    residual = balances.get(converter, 0) - amount
    if residual > 0:
        post[converter] = residual
    total = sum(post.values())
    if total == 0 or recipient not in post:
        return Fraction(0)
    return Fraction(amount) * post[recipient] / total
