from dataclasses import dataclass
from functools import lru_cache

from src.adapters.outbound.csv_report_writer import CsvReportWriter
from src.adapters.outbound.json_report_writer import JsonReportWriter
from src.adapters.outbound.text_report_writer import TextReportWriter
from src.application.ports.report_writer_port import ReportWriterPort
from src.application.services.chain_solver import ChainSolver
from src.application.services.mc_oracle import MonteCarloEstimator
from src.application.use_cases.compute_closed_form import ComputeClosedFormUseCase
from src.application.use_cases.compute_exact import ComputeExactUseCase
from src.application.use_cases.compute_tail_sum import ComputeTailSumUseCase
from src.application.use_cases.cross_check import CrossCheckUseCase
from src.application.use_cases.simulate import SimulateUseCase
from src.configuration.settings import Settings, build_settings
from src.domain.run_request import OutputFormat


@dataclass(frozen=True)
class Container:
    settings: Settings
    chain_solver: ChainSolver
    estimator: MonteCarloEstimator
    compute_exact_use_case: ComputeExactUseCase
    compute_closed_form_use_case: ComputeClosedFormUseCase
    compute_tail_sum_use_case: ComputeTailSumUseCase
    simulate_use_case: SimulateUseCase
    cross_check_use_case: CrossCheckUseCase
    report_writers: dict[OutputFormat, ReportWriterPort]


@lru_cache(maxsize=1)
def build_container() -> Container:
    settings = build_settings()

    chain_solver = ChainSolver(dense_limit=settings.dense_limit)
    estimator = MonteCarloEstimator(workers=settings.workers)

    return Container(
        settings=settings,
        chain_solver=chain_solver,
        estimator=estimator,
        compute_exact_use_case=ComputeExactUseCase(
            chain_solver=chain_solver,
            state_limit=settings.state_limit,
        ),
        compute_closed_form_use_case=ComputeClosedFormUseCase(
            rational_max_n=settings.rational_max_n,
        ),
        compute_tail_sum_use_case=ComputeTailSumUseCase(
            n_cap=settings.tail_n_cap,
        ),
        simulate_use_case=SimulateUseCase(estimator=estimator),
        cross_check_use_case=CrossCheckUseCase(
            chain_solver=chain_solver,
            estimator=estimator,
            state_limit=settings.state_limit,
            tailsum_max_n=settings.tailsum_max_n,
            n_cap=settings.tail_n_cap,
        ),
        report_writers={
            OutputFormat.JSON: JsonReportWriter(),
            OutputFormat.CSV: CsvReportWriter(),
            OutputFormat.TEXT: TextReportWriter(),
        },
    )


def clear_container() -> None:
    build_container.cache_clear()
