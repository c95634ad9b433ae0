import os
from dataclasses import dataclass
from pathlib import Path

from dotenv import load_dotenv

from src.common.exception import ConfigurationError

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _load_env() -> str:
    """.env.{APP_ENV} 를 읽는다. 읽은 파일 경로 (없으면 빈 문자열)를 반환."""
    app_env = os.getenv("APP_ENV", "local")
    # 프로젝트 루트 디렉토리 찾기 (src/configuration/settings.py -> ../../)
    project_root = Path(__file__).parent.parent.parent
    env_file = project_root / f".env.{app_env}"
    return str(env_file) if load_dotenv(env_file) else ""


def _positive_int(name: str, default: int) -> int:
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        value = int(raw.replace("_", ""))
    except ValueError:
        raise ConfigurationError(f"{name}는 정수여야 합니다: '{raw}'") from None
    if value < 1:
        raise ConfigurationError(f"{name}는 1 이상이어야 합니다: {value}")
    return value


@dataclass(frozen=True)
class Settings:
    app_env: str
    state_limit: int        # build_space 최대 상태 수 (1 + prod N_j)
    dense_limit: int        # fundamental_matrix 최대 transient 상태 수
    rational_max_n: int     # closed form 기본 유리수 모드 상한
    tailsum_max_n: int      # check에서 tailsum을 실행하는 N 상한
    tail_n_cap: int         # tail sum 최대 항 수
    workers: int            # Monte Carlo chunk 병렬 스레드 수
    log_level: str
    log_file: str           # 빈 문자열이면 파일 로그 없음
    env_file: str = ""      # 로드한 .env 파일


def build_settings() -> Settings:
    env_file = _load_env()

    log_level = os.getenv("PARCOLLECT_LOG_LEVEL", "WARNING").strip().upper()
    if log_level not in _LOG_LEVELS:
        raise ConfigurationError(
            f"PARCOLLECT_LOG_LEVEL 값이 올바르지 않습니다: '{log_level}'. 사용 가능: {_LOG_LEVELS}"
        )

    return Settings(
        app_env=os.getenv("APP_ENV", "local"),
        state_limit=_positive_int("PARCOLLECT_STATE_LIMIT", 10_000_000),
        dense_limit=_positive_int("PARCOLLECT_DENSE_LIMIT", 2000),
        rational_max_n=_positive_int("PARCOLLECT_RATIONAL_MAX_N", 1000),
        tailsum_max_n=_positive_int("PARCOLLECT_TAILSUM_MAX_N", 150),
        tail_n_cap=_positive_int("PARCOLLECT_TAIL_N_CAP", 1_000_000),
        workers=_positive_int("PARCOLLECT_WORKERS", 1),
        log_level=log_level,
        log_file=os.getenv("PARCOLLECT_LOG_FILE", "").strip(),
        env_file=env_file,
    )
