import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from likestarter.errors import InsufficientBalance
from likestarter.ledger import TokenDomain
from likestarter.oracle import distribution_oracle, exact_share


def test_minimal_tie_breaks_by_lower_id():
    # post-deduction balances tie at a=1, b=1; the single atto goes to "a"
    assert distribution_oracle({"a": 2, "b": 1}, "a", 1) == {"a": 1}


def test_conservation_by_construction():
    result = distribution_oracle({"a": 7, "b": 9, "c": 13}, "b", 5)
    assert sum(result.values()) == 5  # no holder set empty -> dust 0


def test_empty_holder_set_returns_nothing():
    assert distribution_oracle({"solo": 4}, "solo", 4) == {}


def test_requires_balance():
    with pytest.raises(InsufficientBalance):
        distribution_oracle({"a": 3}, "a", 4)


@given(
    st.dictionaries(
        st.sampled_from([f"h{i}" for i in range(12)]),
        st.integers(min_value=1, max_value=10**12),
        min_size=1,
        max_size=12,
    ),
    st.data(),
)
@settings(max_examples=200, deadline=None)
def test_proportionality_bound(balances, data):
    converter = data.draw(st.sampled_from(sorted(balances)))
    amount = data.draw(st.integers(min_value=1, max_value=balances[converter]))
    result = distribution_oracle(balances, converter, amount)
    for holder, assigned in result.items():
        share = exact_share(balances, converter, holder, amount)
        assert abs(Fraction(assigned) - share) < 1

    post_total = sum(
        v for h, v in balances.items() if h != converter
    ) + (balances[converter] - amount)
    expected_paid = amount if post_total > 0 else 0
    assert sum(result.values()) == expected_paid


def test_engine_matches_oracle_on_random_instances():
    rng = random.Random(99)
    for _ in range(300):
        n = rng.randrange(1, 12)
        balances = {f"h{i:02d}": rng.randrange(1, 10**9) for i in range(n)}
        converter = rng.choice(sorted(balances))
        amount = rng.randrange(1, balances[converter] + 1)

        domain = TokenDomain(beneficiary="b")
        for holder, value in balances.items():
            domain.mint_likoin(holder, value)
        receipt = domain.convert_likoin_to_buck(converter, amount)
        assert receipt.distribution == distribution_oracle(balances, converter, amount)
