import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path

from src.adapters.inbound.cli.commands import main
from src.common.exception import ConfigurationError, EXIT_VALIDATION
from src.configuration.settings import build_settings


def setup_logging(level: str, log_file: str = "") -> logging.Logger:
    """로깅 설정: stderr (+ 선택적으로 회전 파일). stdout은 리포트 전용."""
    formatter = logging.Formatter(
        '%(asctime)s [%(name)s] %(levelname)s: %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    # 중복 핸들러 방지 (같은 프로세스에서 재호출 시)
    for handler in list(root_logger.handlers):
        if getattr(handler, "_parcollect", False):
            root_logger.removeHandler(handler)

    stderr_handler = logging.StreamHandler(sys.stderr)
    stderr_handler.setFormatter(formatter)
    stderr_handler._parcollect = True
    root_logger.addHandler(stderr_handler)

    if log_file:
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(
            path,
            maxBytes=10 * 1024 * 1024,  # 10MB
            backupCount=5,
            encoding='utf-8'
        )
        file_handler.setFormatter(formatter)
        file_handler._parcollect = True
        root_logger.addHandler(file_handler)

    return logging.getLogger(__name__)


def run() -> None:
    """`parcollect` 콘솔 스크립트 / `python -m src` 진입점."""
    try:
        settings = build_settings()
    except ConfigurationError as e:
        print(f"error: {e}", file=sys.stderr)
        sys.exit(EXIT_VALIDATION)

    logger = setup_logging(settings.log_level, settings.log_file)
    logger.info("parcollect 시작 (env=%s, state_limit=%d)", settings.app_env, settings.state_limit)
    if settings.env_file:
        logger.debug("환경 파일 로드: %s", settings.env_file)
    sys.exit(main())
