import pytest

from uqc.application.theory.use_cases.monte_carlo_check_use_case import MonteCarloCheckUseCase
from uqc.application.theory.use_cases.theory_sweep_use_case import (
    MC_COLUMNS,
    THEORY_COLUMNS,
    TheorySweepUseCase,
)
from uqc.domain.pipeline.entities.experiment import TheorySweep
from uqc.domain.shared.errors import ValidationError


class TestTheorySweepUseCase:
    def test_default_grid(self):
        use_case = TheorySweepUseCase()
        rows = use_case.execute(TheorySweep(), seed=42)
        assert len(rows) == 3 * 2 * 3
        assert all(set(row) == set(THEORY_COLUMNS) for row in rows)

    def test_expected_shots_at_full_agreement(self):
        rows = TheorySweepUseCase().execute(TheorySweep(eps=(0.0,), shots=(1,)), seed=0)
        assert [(row["N"], row["E_T"]) for row in rows] == [(3, 4.0), (5, 16.0), (7, 64.0)]
        assert all(row["p_u"] == pytest.approx((1 + row["delta"]) / 2) for row in rows)

    def test_thresholds_outside_range_are_skipped(self):
        points = TheorySweepUseCase().points(TheorySweep(n_qubits=(3, 5), thresholds=(2, 4), eps=(0.0,), shots=(1,)))
        assert [(p.n_qubits, p.threshold) for p in points] == [(3, 2), (5, 4)]

    def test_monte_carlo_columns(self):
        sweep = TheorySweep(n_qubits=(3,), eps=(0.0,), shots=(5,), mc_trials=200)
        use_case = TheorySweepUseCase()
        rows = use_case.execute(sweep, seed=1)
        assert use_case.columns(sweep) == THEORY_COLUMNS + MC_COLUMNS
        assert rows[0]["mc_trials"] == 200
        assert rows[0]["mc_E_T"] >= 1.0

    def test_monte_carlo_is_reproducible(self):
        sweep = TheorySweep(n_qubits=(5,), eps=(0.01,), shots=(25,), mc_trials=300)
        assert TheorySweepUseCase().execute(sweep, seed=7) == TheorySweepUseCase().execute(sweep, seed=7)

    def test_even_qubit_counts_are_rejected(self):
        with pytest.raises(ValidationError):
            TheorySweep(n_qubits=(4,))


class TestMonteCarloCheckUseCase:
    def test_exact_checks_pass(self):
        results = MonteCarloCheckUseCase().execute(trials=2000, seed=42)
        assert len(results) == 22
        exact = [r for r in results if r.stderr == 0.0]
        assert len(exact) == 17
        assert all(r.passed for r in exact), [r.name for r in exact if not r.passed]

    def test_statistical_checks_report_standard_errors(self):
        results = MonteCarloCheckUseCase().execute(trials=2000, seed=42)
        statistical = [r for r in results if r.stderr > 0.0]
        assert {r.name.split(" ")[0] for r in statistical} == {"p_unambiguous", "expected_shots", "p_multishot"}
        assert all(r.tolerance >= 3 * r.stderr for r in statistical)

    @pytest.mark.slow
    def test_full_trial_count_passes(self):
        results = MonteCarloCheckUseCase().execute(trials=100_000, seed=42)
        assert all(r.passed for r in results), [r.name for r in results if not r.passed]
