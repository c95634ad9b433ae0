from dataclasses import dataclass

import pytest

from src.application.services.chain_solver import ChainSolver
from src.application.services.mc_oracle import MonteCarloEstimator
from src.application.use_cases.compute_closed_form import ComputeClosedFormUseCase
from src.application.use_cases.compute_exact import ComputeExactUseCase
from src.application.use_cases.compute_tail_sum import ComputeTailSumUseCase
from src.application.use_cases.cross_check import CrossCheckUseCase
from src.application.use_cases.simulate import SimulateUseCase
from src.common.exception import CapacityError, ValidationError
from src.domain.collection import CollectionSpec, State
from src.domain.estimate import Estimate
from src.domain.scalar import ScalarMode


def _cross_check(**overrides) -> CrossCheckUseCase:
    options = dict(
        chain_solver=ChainSolver(),
        estimator=MonteCarloEstimator(),
        state_limit=10_000_000,
        tailsum_max_n=150,
        n_cap=1_000_000,
    )
    options.update(overrides)
    return CrossCheckUseCase(**options)


@dataclass
class _FixedEstimator:
    mean: float

    def estimate_parallel(self, spec, trials, seed):
        return Estimate(mean=self.mean, sample_variance=1.0, stderr_mean=0.01, trials=trials, seed=seed)


def test_exact_report():
    use_case = ComputeExactUseCase(ChainSolver(), state_limit=1_000)
    report = use_case.execute(CollectionSpec((2, 2)), ScalarMode.RATIONAL, full=True)
    assert report.results["expectation"] == "11/3"
    assert report.results["variance"] == "8/3"
    assert report.diagnostics["states"] == 5
    assert report.diagnostics["edges"] == 10
    assert [row["state"] for row in report.results["per_state"]] == [
        [0, 0], [1, 1], [1, 2], [2, 1], [2, 2],
    ]
    assert report.results["per_state"][-1]["k"] == "0/1"


def test_exact_from_state():
    use_case = ComputeExactUseCase(ChainSolver(), state_limit=1_000)
    report = use_case.execute(
        CollectionSpec((2, 2)), ScalarMode.RATIONAL, from_state=State((1, 1)),
    )
    assert report.results["expectation"] == "8/3"
    assert report.results["from_state"] == [1, 1]


def test_exact_capacity():
    use_case = ComputeExactUseCase(ChainSolver(), state_limit=100)
    with pytest.raises(CapacityError):
        use_case.execute(CollectionSpec((6, 6, 6)), ScalarMode.FLOAT)


def test_closed_form_report():
    use_case = ComputeClosedFormUseCase(rational_max_n=1000)
    report = use_case.execute(CollectionSpec((6,)), None)
    assert report.mode == "rational"
    assert report.results["expectation"] == "147/10"
    assert report.results["variance_geometric"] == "3899/100"
    assert report.results["variance_markov"] == "3899/100"
    with pytest.raises(ValidationError):
        use_case.execute(CollectionSpec((6, 6)), None)


def test_closed_form_switches_to_float_above_limit():
    report = ComputeClosedFormUseCase(rational_max_n=10).execute(CollectionSpec((20,)), None)
    assert report.mode == "float"
    assert isinstance(report.results["expectation"], float)


def test_tail_sum_report():
    report = ComputeTailSumUseCase(n_cap=None).execute(CollectionSpec((2, 2)), 1e-10)
    assert report.results["expectation"] == pytest.approx(11 / 3, abs=1e-9)
    assert report.diagnostics["truncation_bound"] < 1e-10
    assert report.diagnostics["terms"] > 0


def test_simulate_report():
    report = SimulateUseCase(MonteCarloEstimator()).execute(CollectionSpec((6,)), 20_000, seed=3)
    assert report.results["expectation"] == pytest.approx(14.7, abs=0.5)
    assert report.diagnostics["trials"] == 20_000
    assert report.diagnostics["seed"] == 3


def test_check_runs_every_method():
    report = _cross_check().execute(CollectionSpec((6,)), ScalarMode.RATIONAL, 1e-10, 20_000, 0)
    assert report.passed
    assert [m["method"] for m in report.results["methods"]] == [
        "closed-form", "exact", "tailsum", "simulate",
    ]
    assert report.results["expectation"] == "147/10"
    assert report.diagnostics["skipped"] == []
    assert all(check["passed"] for check in report.diagnostics["checks"])


def test_check_skips_exact_above_state_limit():
    report = _cross_check(state_limit=10).execute(
        CollectionSpec((6, 6)), ScalarMode.FLOAT, 1e-10, 20_000, 0,
    )
    assert report.passed
    assert [m["method"] for m in report.results["methods"]] == ["tailsum", "simulate"]
    assert report.diagnostics["skipped"][0].startswith("exact")


def test_check_skips_tailsum_for_large_collections():
    report = _cross_check(tailsum_max_n=4).execute(
        CollectionSpec((6,)), ScalarMode.FLOAT, 1e-10, 20_000, 0,
    )
    assert "tailsum" not in [m["method"] for m in report.results["methods"]]
    assert report.diagnostics["skipped"][0].startswith("tailsum")


def test_check_reports_disagreement():
    report = _cross_check(estimator=_FixedEstimator(mean=30.0)).execute(
        CollectionSpec((6,)), ScalarMode.FLOAT, 1e-10, 1_000, 0,
    )
    assert not report.passed
    assert any("simulate" in failure for failure in report.failures)
