import hashlib
from pathlib import Path
from typing import Iterable, Mapping

import structlog

from ambig_miner import __version__
from ambig_miner.core.jsonl import write_json
from ambig_miner.schemas.config import ArtifactDigest, Manifest, PipelineConfig

logger = structlog.get_logger()

# execution knobs that never change an output byte
EXECUTION_ONLY = {"jobs", "shard_size"}

_CHUNK = 1 << 20


def file_sha256(path: str | Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        while chunk := f.read(_CHUNK):
            digest.update(chunk)
    return digest.hexdigest()


def _digests(paths: Iterable[Path | None]) -> list[ArtifactDigest]:
    return [
        ArtifactDigest(path=str(p), sha256=file_sha256(p))
        for p in paths
        if p is not None and p.is_file()
    ]


def write_manifest(
    config: PipelineConfig,
    stage: str,
    inputs: Iterable[Path | None],
    outputs: Iterable[Path],
    stats: Mapping[str, int | float] | None = None,
) -> Path:
    manifest = Manifest(
        version=__version__,
        stage=stage,
        seed=config.seed,
        config=config.model_dump(mode="json", exclude=EXECUTION_ONLY),
        inputs=_digests(inputs),
        outputs=_digests(outputs),
        stats=dict(stats or {}),
    )
    path = config.out_dir / f"{stage}.manifest.json"
    write_json(path, manifest.model_dump(mode="json"))
    logger.info("Wrote manifest", stage=stage, path=str(path))
    return path
