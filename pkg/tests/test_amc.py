import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from amcmodem import (
    AmcPolicy,
    ConfigurationError,
    DomainError,
    InsufficientBudgetError,
    LinkState,
    Scheme,
    derive_thresholds,
    select_scheme,
    throughput_bits_per_sec,
)
from amcmodem.amc import GRID_MIN_DB, GRID_STEP_DB, find_threshold
from amcmodem.link import count_bit_errors, random_bits

from oracles import ber_qam16_exact, solve_bpsk_ebn0_db

B, Q, Q16, Q64 = Scheme.BPSK, Scheme.QPSK, Scheme.QAM16, Scheme.QAM64


def make_policy(hyst=0.0):
    return AmcPolicy(((B, 7.0), (Q, 10.0), (Q16, 16.5), (Q64, 22.75)), 1e-3, hyst)


@pytest.fixture(scope="module")
def policy_1e3():
    return derive_thresholds(1e-3, seed=5)


# policy validation

@pytest.mark.parametrize("entries", [
    ((B, 7.0), (Q, 7.0)),
    ((B, 7.0), (Q, 6.0)),
    ((Q, 7.0), (B, 10.0)),
    ((Q, 7.0), (Q16, 10.0)),
    ((B, 7.0), (B, 8.0)),
    ((B, float("nan")),),
])
def test_policy_rejects_bad_entries(entries):
    with pytest.raises(ConfigurationError):
        AmcPolicy(entries, 1e-3)


@pytest.mark.parametrize("target,hyst", [(0.0, 0.0), (0.5, 0.0), (1e-3, -0.1)])
def test_policy_rejects_bad_target_or_hysteresis(target, hyst):
    with pytest.raises(ConfigurationError):
        AmcPolicy(((B, 7.0),), target, hyst)


def test_policy_text_round_trip():
    p = make_policy(1.5)
    assert AmcPolicy.from_text(p.to_text()) == p


def test_policy_text_errors():
    with pytest.raises(ConfigurationError):
        AmcPolicy.from_text("threshold.BPSK = 7\n")
    with pytest.raises(ConfigurationError):
        AmcPolicy.from_text("target-ber = 0.001\nbogus = 1\nthreshold.BPSK = 7\n")


# derivation

def test_thresholds_strictly_increase(policy_1e3):
    t = [policy_1e3.threshold(s) for s in (B, Q, Q16, Q64)]
    assert t == sorted(t) and len(set(t)) == 4


def test_thresholds_on_grid(policy_1e3):
    for _, t in policy_1e3.entries:
        assert ((t - GRID_MIN_DB) / GRID_STEP_DB) == pytest.approx(round((t - GRID_MIN_DB) / GRID_STEP_DB))


def test_bpsk_threshold_matches_theory(policy_1e3):
    oracle = solve_bpsk_ebn0_db(1e-3)
    assert oracle == pytest.approx(6.79, abs=0.01)
    assert abs(policy_1e3.threshold(B) - oracle) <= 0.5


def test_qpsk_threshold_is_bpsk_plus_3db(policy_1e3):
    oracle = solve_bpsk_ebn0_db(1e-3) + 10 * math.log10(2)
    assert abs(policy_1e3.threshold(Q) - oracle) <= 0.5


def test_qam16_threshold_matches_theory(policy_1e3):
    lo, hi = 0.0, 30.0
    for _ in range(100):
        mid = (lo + hi) / 2
        lo, hi = (mid, hi) if ber_qam16_exact(mid) > 1e-3 else (lo, mid)
    oracle_esn0 = hi + 10 * math.log10(4)
    assert abs(policy_1e3.threshold(Q16) - oracle_esn0) <= 0.5


def test_derivation_deterministic_and_parallel_safe(policy_1e3):
    assert derive_thresholds(1e-3, seed=5, workers=4) == policy_1e3


def test_subset_gives_same_thresholds(policy_1e3):
    sub = derive_thresholds(1e-3, [B, Q16], seed=5)
    assert sub.entries == ((B, policy_1e3.threshold(B)), (Q16, policy_1e3.threshold(Q16)))


def test_ber_at_threshold_within_slack(policy_1e3):
    n = math.ceil(100 / 1e-3)
    for scheme, t in policy_1e3.entries:
        k = scheme.bits_per_symbol
        bits = random_bits(k * math.ceil(n / k), 777 + scheme.order)
        errs = count_bit_errors(scheme, t, bits, 999 + scheme.order)
        assert errs / bits.size <= 1.5e-3, scheme


def test_grid_edge_at_coin_flip_target():
    for s in Scheme:
        assert find_threshold(s, 0.4, 20_000, seed=1) <= GRID_MIN_DB


def test_coin_flip_target_outside_derivation_range():
    with pytest.raises(ConfigurationError):
        derive_thresholds(0.4)


@pytest.mark.parametrize("target", [1e-7, 0.2])
def test_target_range(target):
    with pytest.raises(ConfigurationError):
        derive_thresholds(target)


def test_budget_too_small():
    with pytest.raises(InsufficientBudgetError):
        derive_thresholds(1e-3, sim_budget=99_999)


def test_bpsk_required():
    with pytest.raises(ConfigurationError):
        derive_thresholds(1e-2, [Q, Q16])


# selection

def test_high_snr_selects_qam64():
    p = make_policy(1.0)
    assert select_scheme(40.0, p, LinkState(B, 0.0)) is Q64
    assert select_scheme(40.0, p) is Q64


def test_low_snr_selects_bpsk():
    p = make_policy(1.0)
    assert select_scheme(-20.0, p, LinkState(Q64, 30.0)) is B
    assert select_scheme(-20.0, p) is B


def test_hysteresis_at_qam16_threshold():
    p = make_policy(1.0)
    assert select_scheme(16.5, p, LinkState(Q, 16.0)) is Q
    assert select_scheme(16.5, p, LinkState(Q16, 17.0)) is Q16
    assert select_scheme(17.5, p, LinkState(Q, 17.0)) is Q16


def test_downgrade_is_immediate():
    p = make_policy(3.0)
    assert select_scheme(16.49, p, LinkState(Q16, 20.0)) is Q


def test_partial_upgrade_when_higher_margin_not_met():
    p = make_policy(1.0)
    # QAM16 supported without margin, QPSK with margin
    assert select_scheme(17.0, p, LinkState(B, 0.0)) is Q


@given(st.lists(st.floats(-10, 40), min_size=2, max_size=30))
def test_selection_monotone_without_hysteresis(snrs):
    p = make_policy(0.0)
    snrs = sorted(snrs)
    bps = [select_scheme(s, p, LinkState(B)).bits_per_symbol for s in snrs]
    assert bps == sorted(bps)


@given(st.floats(-10, 40), st.sampled_from(list(Scheme)))
def test_selection_maximal_without_hysteresis(snr, current):
    p = make_policy(0.0)
    chosen = select_scheme(snr, p, LinkState(current))
    qualifying = [s for s, t in p.entries if t <= snr]
    if qualifying:
        assert p.threshold(chosen) <= snr
        assert chosen is max(qualifying, key=lambda s: s.bits_per_symbol)
    else:
        assert chosen is B


@given(st.sampled_from([7.0, 10.0, 16.5, 22.75]), st.floats(0.1, 6.0),
       st.sampled_from(list(Scheme)), st.integers(2, 60))
@settings(max_examples=200)
def test_anti_flapping(threshold, hyst, start, steps):
    p = make_policy(hyst)
    state = LinkState(start)
    changes, prev = 0, None
    for i in range(steps):
        snr = threshold + (hyst / 2 if i % 2 else -hyst / 2)
        scheme = select_scheme(snr, p, state)
        if prev is not None and scheme is not prev:
            changes += 1
        state, prev = LinkState(scheme, snr), scheme
    assert changes <= 1


# throughput

def test_throughput_values():
    assert throughput_bits_per_sec(Q, 1e6) == 2e6
    assert throughput_bits_per_sec(Q16, 1e6) == 4e6
    assert throughput_bits_per_sec(Q64, 3.3e5) == 6 * throughput_bits_per_sec(B, 3.3e5)


@pytest.mark.parametrize("rate", [0.0, -1.0, float("nan")])
def test_throughput_domain(rate):
    with pytest.raises(DomainError):
        throughput_bits_per_sec(B, rate)
