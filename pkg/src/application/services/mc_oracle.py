"""Monte Carlo 추정 (확률적 sanity oracle).

난수: numpy PCG64. seed s 실행의 c번째 chunk는
SeedSequence(entropy=s, spawn_key=(c,)) 로 시드한다. chunk 크기는 CHUNK_SIZE로 고정이며
chunk 결과는 항상 chunk 순서대로 병합하므로 worker 수와 무관하게 결과가 같다.
"""
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from src.common.exception import ValidationError
from src.domain.collection import CollectionSpec
from src.domain.estimate import Estimate

logger = logging.getLogger(__name__)

CHUNK_SIZE = 65_536
# 한 번에 생성하는 균등 난수 개수 상한 (메모리)
BLOCK_ELEMENTS = 1 << 22
MAX_SEED = 2 ** 64 - 1


def make_rng(seed: int, chunk: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy=seed, spawn_key=(chunk,))))


def sample_batch(n_types: int, rng: np.random.Generator, size: int) -> np.ndarray:
    """X = 1 + sum_{i=2..N} G_i 를 size개 뽑는다.

    G_i ~ Geometric((N-i+1)/N), 역변환 ceil(log U / log(1-p)), U in (0, 1].
    """
    if n_types < 1:
        raise ValidationError(f"N은 1 이상이어야 합니다: {n_types}")
    if n_types == 1:
        return np.ones(size, dtype=np.int64)

    # 1 - p_i = (i-1)/N, i = 2..N
    log_q = np.log(np.arange(1, n_types, dtype=np.float64) / n_types)
    out = np.empty(size, dtype=np.int64)
    rows = max(1, BLOCK_ELEMENTS // (n_types - 1))
    for start in range(0, size, rows):
        count = min(rows, size - start)
        u = 1.0 - rng.random((count, n_types - 1))
        stages = np.maximum(np.ceil(np.log(u) / log_q), 1.0)
        out[start:start + count] = 1 + stages.sum(axis=1).astype(np.int64)
    return out


def sample_single(n_types: int, rng: np.random.Generator) -> int:
    """단일 컬렉션 완성 시간 한 번 추출."""
    return int(sample_batch(n_types, rng, 1)[0])


@dataclass(frozen=True)
class _ChunkMoments:
    count: int
    mean: float
    m2: float


def _merge(a: _ChunkMoments, b: _ChunkMoments) -> _ChunkMoments:
    """pooled 평균/편차 제곱합 병합."""
    count = a.count + b.count
    delta = b.mean - a.mean
    return _ChunkMoments(
        count=count,
        mean=a.mean + delta * b.count / count,
        m2=a.m2 + b.m2 + delta * delta * a.count * b.count / count,
    )


class MonteCarloEstimator:
    """max(X^1, ..., X^m) 의 평균/분산 Monte Carlo 추정기"""

    def __init__(self, workers: int = 1, chunk_size: int = CHUNK_SIZE):
        self._workers = max(1, workers)
        self._chunk_size = chunk_size

    def _run_chunk(self, spec: CollectionSpec, seed: int, chunk: int, size: int) -> _ChunkMoments:
        rng = make_rng(seed, chunk)
        longest = sample_batch(spec.sizes[0], rng, size)
        for n_types in spec.sizes[1:]:
            np.maximum(longest, sample_batch(n_types, rng, size), out=longest)
        values = longest.astype(np.float64)
        mean = float(values.mean())
        return _ChunkMoments(count=size, mean=mean, m2=float(np.square(values - mean).sum()))

    def estimate_parallel(self, spec: CollectionSpec, trials: int, seed: int) -> Estimate:
        if trials < 2:
            raise ValidationError(f"trials는 2 이상이어야 합니다: {trials}")
        if not 0 <= seed <= MAX_SEED:
            raise ValidationError(f"seed는 0..2^64-1 범위여야 합니다: {seed}")

        started = time.perf_counter()
        chunks = math.ceil(trials / self._chunk_size)
        sizes = [min(self._chunk_size, trials - c * self._chunk_size) for c in range(chunks)]

        if self._workers == 1 or chunks == 1:
            parts = [self._run_chunk(spec, seed, c, size) for c, size in enumerate(sizes)]
        else:
            with ThreadPoolExecutor(max_workers=self._workers) as executor:
                parts = list(executor.map(
                    lambda item: self._run_chunk(spec, seed, *item), enumerate(sizes),
                ))

        pooled = parts[0]
        for part in parts[1:]:
            pooled = _merge(pooled, part)

        estimate = Estimate.from_moments(pooled.count, pooled.mean, pooled.m2, seed)
        logger.info(
            "Monte Carlo 완료: collections=%s, trials=%d, chunks=%d, workers=%d, mean=%.6f, %.1f ms",
            spec.label(), trials, chunks, self._workers, estimate.mean,
            (time.perf_counter() - started) * 1000,
        )
        return estimate
