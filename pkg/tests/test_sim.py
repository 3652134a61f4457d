"""Scenario runner: determinism, adversaries, and report bookkeeping."""

import dataclasses

import pytest

from v2isign import ProtocolError, Scenario, SimReport, replay_attack_check, run_scenario


def test_honest_scenario_accepts_everything():
    report = run_scenario(Scenario(n_vehicles=5, reports_per_vehicle=2, seed=101))
    assert report.messages_sent == 10
    assert report.messages_accepted == 10
    assert report.messages_rejected == 0
    assert report.mismatched_plaintexts == 0
    assert report.accepted_ids == {(v, s) for v in range(5) for s in range(2)}


def test_identical_seeds_identical_reports():
    sc = Scenario(n_vehicles=6, reports_per_vehicle=2, adversary="tamper",
                  adversary_rate=0.3, seed=102)
    assert run_scenario(sc) == run_scenario(sc)


def test_report_is_schedule_independent():
    """Worker count changes interleaving but not the comparable outcome."""
    base = dict(n_vehicles=6, reports_per_vehicle=2, adversary="tamper",
                adversary_rate=0.25, seed=103)
    solo = run_scenario(Scenario(**base, n_workers=1))
    many = run_scenario(Scenario(**base, n_workers=6))
    # the runs differ only in their worker counts, by construction
    assert dataclasses.replace(solo, scenario=many.scenario) == many


def test_different_seeds_differ():
    a = run_scenario(Scenario(n_vehicles=4, reports_per_vehicle=1, seed=104))
    b = run_scenario(Scenario(n_vehicles=4, reports_per_vehicle=1, seed=105))
    assert a.accepted_ids == b.accepted_ids  # same shape of traffic
    assert a != b  # but different scenario seed, hence different reports


def test_tamper_adversary_is_fully_isolated():
    report = run_scenario(
        Scenario(n_vehicles=8, reports_per_vehicle=2, adversary="tamper",
                 adversary_rate=0.3, seed=106)
    )
    assert report.tamper_injected > 0
    assert report.isolated_ids == report.tampered_ids
    assert report.isolated_honest == 0
    assert report.aggregate_failed == 0
    assert report.mismatched_plaintexts == 0
    assert report.messages_accepted == report.messages_sent - report.tamper_injected
    assert report.bad_signers_isolated == report.tamper_injected


def test_replay_adversary_is_fully_rejected():
    report = replay_attack_check(
        Scenario(n_vehicles=6, reports_per_vehicle=2, adversary="replay",
                 adversary_rate=0.5, seed=107)
    )
    assert report.replay_injected > 0
    assert report.replay_rejected == report.replay_injected
    originals = report.messages_sent - report.replay_injected
    assert report.messages_accepted == originals


def test_replay_check_requires_replay_adversary():
    with pytest.raises(ValueError):
        replay_attack_check(Scenario(n_vehicles=2, seed=1))


def test_accounting_always_balances():
    for adversary, rate in (("none", 0.0), ("tamper", 0.4), ("replay", 0.4)):
        report = run_scenario(
            Scenario(n_vehicles=5, reports_per_vehicle=2, adversary=adversary,
                     adversary_rate=rate, seed=108)
        )
        assert report.messages_accepted + report.messages_rejected == report.messages_sent


def test_scenario_validation():
    with pytest.raises(ValueError):
        Scenario(n_vehicles=0)
    with pytest.raises(ValueError):
        Scenario(n_vehicles=1, reports_per_vehicle=0)
    with pytest.raises(ValueError):
        Scenario(n_vehicles=1, adversary="jam")
    with pytest.raises(ValueError):
        Scenario(n_vehicles=1, adversary="tamper", adversary_rate=1.5)
    with pytest.raises(ValueError):
        Scenario(n_vehicles=1, adversary_rate=0.5)  # rate without adversary
    with pytest.raises(ValueError):
        Scenario(n_vehicles=1, batch_window=0)
    with pytest.raises(ValueError):
        Scenario(n_vehicles=1, max_batch_size=0)
    with pytest.raises(ValueError):
        Scenario(n_vehicles=1, n_workers=0)


def test_report_formatting_covers_the_numbers():
    report = run_scenario(Scenario(n_vehicles=2, reports_per_vehicle=1, seed=109))
    text = "\n".join(report.format_lines())
    assert "sent=2" in text
    assert "accepted=2" in text
    assert isinstance(report, SimReport)
    assert report.timings["wall_s"] > 0
