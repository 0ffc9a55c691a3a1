from functools import partial
from typing import Iterable, Iterator

import structlog

from ambig_miner.core.jsonl import iter_jsonl, write_jsonl
from ambig_miner.jobs.manifest import write_manifest
from ambig_miner.jobs.runner import flatten, map_shards
from ambig_miner.models.enums import PronounSideEnum
from ambig_miner.schemas.config import PipelineConfig
from ambig_miner.schemas.corpus import ParallelSegment
from ambig_miner.schemas.labels import SegmentLabels
from ambig_miner.schemas.name_span import NameSpan
from ambig_miner.services.corpus import (
    attach_parses_stream,
    group_by_line,
    iter_conllu,
    read_corpus_jsonl,
)
from ambig_miner.services.gender_extract import label_segment

logger = structlog.get_logger()

SegmentWithSpans = tuple[ParallelSegment, list[NameSpan]]


def _label_shard(
    include_head: bool,
    transitive: bool,
    pronoun_side: PronounSideEnum,
    shard: list[SegmentWithSpans],
) -> list[SegmentLabels]:
    return [
        label_segment(seg, spans, include_head, transitive, pronoun_side)
        for seg, spans in shard
    ]


def run_extract(config: PipelineConfig) -> dict[str, int]:
    config.require("extract")
    assert config.corpus and config.spans
    config.out_dir.mkdir(parents=True, exist_ok=True)
    labels_out = config.out_dir / "labels.jsonl"

    segments = read_corpus_jsonl(config.corpus)
    if config.conllu:
        segments = attach_parses_stream(segments, iter_conllu(config.conllu))
    paired = group_by_line(
        ((seg.index, seg) for seg in segments), iter_jsonl(config.spans, NameSpan)
    )

    stats = {"lines": 0, "trg_gendered": 0, "without_parse": 0}

    def counted(labels: Iterable[SegmentLabels]) -> Iterator[SegmentLabels]:
        for item in labels:
            stats["lines"] += 1
            stats["trg_gendered"] += item.trg_gendered
            stats["without_parse"] += not item.has_parse
            yield item

    write_jsonl(
        labels_out,
        counted(
            flatten(
                map_shards(
                    partial(
                        _label_shard,
                        config.include_head,
                        config.transitive,
                        config.pronoun_side,
                    ),
                    paired,
                    config.jobs,
                    config.shard_size,
                    desc="extract",
                )
            )
        ),
    )
    if stats["without_parse"]:
        logger.warning("Segments without a target parse", count=stats["without_parse"])
    logger.info("Extracted gendered terms", **stats)
    write_manifest(
        config,
        "extract",
        inputs=[config.corpus, config.spans, config.conllu],
        outputs=[labels_out],
        stats=stats,
    )
    return stats
