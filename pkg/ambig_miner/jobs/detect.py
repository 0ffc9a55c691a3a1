from collections import Counter
from functools import partial
from typing import Iterable, Iterator

import structlog

from ambig_miner.core.jsonl import write_jsonl
from ambig_miner.jobs.manifest import write_manifest
from ambig_miner.jobs.runner import flatten, map_shards
from ambig_miner.models.enums import NameMethodEnum
from ambig_miner.schemas.config import PipelineConfig
from ambig_miner.schemas.corpus import ParallelSegment
from ambig_miner.schemas.name_span import NameSpan
from ambig_miner.services.corpus import attach_ner_stream, iter_ner_sidecar, read_corpus_jsonl
from ambig_miner.services.name_detect import NameCharPolicy, detect_names

logger = structlog.get_logger()


def _detect_shard(policy: NameCharPolicy, shard: list[ParallelSegment]) -> list[NameSpan]:
    spans: list[NameSpan] = []
    for seg in shard:
        spans.extend(detect_names(seg, policy))
    return spans


def run_detect(config: PipelineConfig) -> dict[str, int]:
    """
    Write every TC span with its method flags.

    `--method` only checks that the sidecar can support it and counts the
    spans it confirms; extract applies the selection.
    """
    config.require("detect")
    assert config.corpus
    config.out_dir.mkdir(parents=True, exist_ok=True)
    spans_out = config.out_dir / "spans.jsonl"

    policy = NameCharPolicy.literal() if config.literal_regex else NameCharPolicy.default()
    segments = read_corpus_jsonl(config.corpus)
    if config.ner:
        segments = attach_ner_stream(segments, iter_ner_sidecar(config.ner))

    per_method: Counter[str] = Counter()
    lines, last_line = 0, -1

    def counted(spans: Iterable[NameSpan]) -> Iterator[NameSpan]:
        nonlocal lines, last_line
        # spans arrive in ascending line order
        for span in spans:
            if span.segment_index != last_line:
                lines += 1
                last_line = span.segment_index
            for method in span.methods:
                per_method[method.value] += 1
            yield span

    written = write_jsonl(
        spans_out,
        counted(
            flatten(
                map_shards(
                    partial(_detect_shard, policy),
                    segments,
                    config.jobs,
                    config.shard_size,
                    desc="detect",
                )
            )
        ),
    )
    stats = {
        "spans": written,
        "lines_with_spans": lines,
        "selected": per_method[config.method.value],
        **{f"spans_{m.value.lower()}": per_method[m.value] for m in NameMethodEnum},
    }
    logger.info("Detected names", method=config.method.value, **stats)
    write_manifest(
        config, "detect", inputs=[config.corpus, config.ner], outputs=[spans_out], stats=stats
    )
    return stats
