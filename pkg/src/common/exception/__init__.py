"""parcollect 공통 예외.

각 예외는 CLI 종료 코드(exit_code)를 함께 가진다.
"""

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CAPACITY = 2
EXIT_CROSS_CHECK = 3


class ParcollectError(Exception):
    """parcollect 예외의 최상위 클래스"""
    exit_code: int = EXIT_VALIDATION


class ValidationError(ParcollectError, ValueError):
    """잘못된 입력 (CollectionSpec, State, 인덱스, 요청 필드)"""
    exit_code = EXIT_VALIDATION


class ConfigurationError(ParcollectError, RuntimeError):
    """환경 변수 값이 올바르지 않음"""
    exit_code = EXIT_VALIDATION


class CapacityError(ParcollectError, RuntimeError):
    """상태 수 또는 dense 행렬 크기 제한 초과"""
    exit_code = EXIT_CAPACITY


class TruncationCapError(ParcollectError, RuntimeError):
    """tail sum이 n_cap 안에서 목표 오차에 도달하지 못함"""
    exit_code = EXIT_CAPACITY


class DegenerateDiagonalError(ParcollectError, ArithmeticError):
    """transient 상태의 대각 원소(1 - p_ss)가 0"""
    exit_code = EXIT_CAPACITY


class FormulaMismatchError(ParcollectError, ArithmeticError):
    """같은 값이어야 하는 closed form들이 서로 다름"""
    exit_code = EXIT_CROSS_CHECK


class CrossCheckError(ParcollectError, RuntimeError):
    """check 명령의 교차 검증 허용 오차 위반"""
    exit_code = EXIT_CROSS_CHECK
