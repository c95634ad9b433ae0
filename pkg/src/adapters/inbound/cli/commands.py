import importlib
import logging
from typing import Annotated, Callable

import typer

from src.common.exception import (
    EXIT_OK,
    EXIT_VALIDATION,
    CrossCheckError,
    ParcollectError,
    ValidationError,
)
from src.configuration.container import Container, build_container
from src.domain.collection import CollectionSpec, State
from src.domain.report import Report
from src.domain.run_request import Command, OutputFormat, RunRequest
from src.domain.scalar import ScalarMode

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="parcollect",
    help="병렬 쿠폰 수집 대기 시간의 기대값과 분산 (exact / closed-form / tailsum / simulate / check)",
    add_completion=False,
    no_args_is_help=True,
    pretty_exceptions_enable=False,
)

CollectionsOption = Annotated[
    str | None, typer.Option("--collections", help="컬렉션 크기 목록 (예: 6,6,6)"),
]
NOption = Annotated[int | None, typer.Option("--n", help="모든 컬렉션의 쿠폰 종류 수 N")]
MOption = Annotated[int | None, typer.Option("--m", help="컬렉션 개수 M (--n과 함께)")]
ModeOption = Annotated[ScalarMode, typer.Option("--mode", help="rational 또는 float")]
OptionalModeOption = Annotated[
    ScalarMode | None,
    typer.Option("--mode", help="rational 또는 float (생략 시 N <= PARCOLLECT_RATIONAL_MAX_N 이면 rational)"),
]
OutputOption = Annotated[OutputFormat, typer.Option("--output", help="json, csv, text")]
EpsOption = Annotated[float, typer.Option("--eps", help="tail sum 절단 목표 오차")]
TrialsOption = Annotated[int, typer.Option("--trials", help="Monte Carlo 시행 수")]
SeedOption = Annotated[int, typer.Option("--seed", help="Monte Carlo seed (0..2^64-1)")]

DEFAULT_EPS = 1e-10
DEFAULT_TRIALS = 100_000


def _resolve_spec(collections: str | None, n: int | None, m: int | None) -> CollectionSpec:
    if collections is not None:
        if n is not None or m is not None:
            raise ValidationError("--collections 와 --n/--m 은 함께 사용할 수 없습니다")
        return CollectionSpec.parse(collections)
    if n is None:
        if m is not None:
            raise ValidationError("--m 은 --n 과 함께 사용해야 합니다")
        raise ValidationError("--collections 또는 --n [--m] 중 하나가 필요합니다")
    return CollectionSpec.uniform(n, 1 if m is None else m)


def _dispatch(container: Container, request: RunRequest) -> Report:
    if request.command is Command.EXACT:
        return container.compute_exact_use_case.execute(
            request.spec, request.mode, full=request.full, from_state=request.from_state,
        )
    if request.command is Command.CLOSED_FORM:
        return container.compute_closed_form_use_case.execute(request.spec, request.mode)
    if request.command is Command.TAILSUM:
        return container.compute_tail_sum_use_case.execute(request.spec, request.eps)
    if request.command is Command.SIMULATE:
        return container.simulate_use_case.execute(request.spec, request.trials, request.seed)
    return container.cross_check_use_case.execute(
        request.spec, request.mode, request.eps, request.trials, request.seed,
    )


def _run(build_request: Callable[[], RunRequest]) -> None:
    """요청을 만들고 실행해 리포트를 stdout에 출력한다. 도메인 오류는 종료 코드로 변환."""
    try:
        request = build_request()
        request.validate()
        container = build_container()
        logger.info("명령 실행: %s collections=%s", request.command.value, request.spec.label())
        report = _dispatch(container, request)
        typer.echo(container.report_writers[request.output].render(report))
        if not report.passed:
            raise CrossCheckError(
                f"교차 검증 실패 {len(report.failures)}건: " + "; ".join(report.failures)
            )
    except ParcollectError as e:
        logger.error("%s: %s", type(e).__name__, e)
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(code=e.exit_code) from e
    except Exception:
        logger.exception("예상하지 못한 오류")
        raise


@app.command("exact")
def exact_command(
    collections: CollectionsOption = None,
    n: NOption = None,
    m: MOption = None,
    mode: ModeOption = ScalarMode.FLOAT,
    output: OutputOption = OutputFormat.TEXT,
    full: Annotated[bool, typer.Option("--full", help="상태별 k, v 벡터 전체 출력")] = False,
    from_state: Annotated[
        str | None, typer.Option("--from-state", help="원점 대신 이 상태에서의 값 (예: 1,2,3)"),
    ] = None,
) -> None:
    """곱 체인 backward sweep으로 정확한 기대값/분산을 계산한다."""
    _run(lambda: RunRequest(
        command=Command.EXACT,
        spec=_resolve_spec(collections, n, m),
        mode=mode,
        output=output,
        full=full,
        from_state=State.parse(from_state) if from_state else None,
    ))


@app.command("closed-form")
def closed_form_command(
    collections: CollectionsOption = None,
    n: NOption = None,
    m: MOption = None,
    mode: OptionalModeOption = None,
    output: OutputOption = OutputFormat.TEXT,
) -> None:
    """단일 컬렉션 closed form (기대값 + 두 분산 식, 불일치 시 오류)."""
    _run(lambda: RunRequest(
        command=Command.CLOSED_FORM,
        spec=_resolve_spec(collections, n, m),
        mode=mode,
        output=output,
    ))


@app.command("tailsum")
def tailsum_command(
    collections: CollectionsOption = None,
    n: NOption = None,
    m: MOption = None,
    eps: EpsOption = DEFAULT_EPS,
    output: OutputOption = OutputFormat.TEXT,
) -> None:
    """포함-배제 CDF tail sum으로 모멘트를 계산한다."""
    _run(lambda: RunRequest(
        command=Command.TAILSUM,
        spec=_resolve_spec(collections, n, m),
        eps=eps,
        output=output,
    ))


@app.command("simulate")
def simulate_command(
    collections: CollectionsOption = None,
    n: NOption = None,
    m: MOption = None,
    trials: TrialsOption = DEFAULT_TRIALS,
    seed: SeedOption = 0,
    output: OutputOption = OutputFormat.TEXT,
) -> None:
    """Monte Carlo로 평균/분산을 추정한다."""
    _run(lambda: RunRequest(
        command=Command.SIMULATE,
        spec=_resolve_spec(collections, n, m),
        trials=trials,
        seed=seed,
        output=output,
    ))


@app.command("check")
def check_command(
    collections: CollectionsOption = None,
    n: NOption = None,
    m: MOption = None,
    mode: ModeOption = ScalarMode.FLOAT,
    eps: EpsOption = DEFAULT_EPS,
    trials: TrialsOption = DEFAULT_TRIALS,
    seed: SeedOption = 0,
    output: OutputOption = OutputFormat.TEXT,
) -> None:
    """적용 가능한 모든 방법을 실행하고 교차 검증한다 (실패 시 종료 코드 3)."""
    _run(lambda: RunRequest(
        command=Command.CHECK,
        spec=_resolve_spec(collections, n, m),
        mode=mode,
        eps=eps,
        trials=trials,
        seed=seed,
        output=output,
    ))


def _click_exceptions(name: str) -> tuple[type[BaseException], ...]:
    """typer가 사용하는 click (독립 패키지 또는 typer 내장 사본)의 예외 클래스."""
    found = []
    for package in ("typer._click", "click"):
        try:
            module = importlib.import_module(f"{package}.exceptions")
        except ImportError:
            continue
        found.append(getattr(module, name))
    return tuple(dict.fromkeys(found))


USAGE_ERRORS = _click_exceptions("UsageError")
ABORT_ERRORS = _click_exceptions("Abort")


def main(argv: list[str] | None = None) -> int:
    """CLI 진입점. 종료 코드를 반환한다 (click 사용법 오류는 1)."""
    command = typer.main.get_command(app)
    try:
        result = command.main(args=argv, prog_name="parcollect", standalone_mode=False)
    except USAGE_ERRORS as e:
        e.show()
        return EXIT_VALIDATION
    except ABORT_ERRORS:
        typer.echo("중단됨", err=True)
        return EXIT_VALIDATION
    return result if isinstance(result, int) else EXIT_OK
