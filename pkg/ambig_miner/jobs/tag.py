from functools import partial
from typing import Iterable, Iterator

import structlog

from ambig_miner.core.jsonl import iter_jsonl, write_jsonl
from ambig_miner.jobs.manifest import write_manifest
from ambig_miner.jobs.runner import flatten, map_shards
from ambig_miner.schemas.config import PipelineConfig
from ambig_miner.schemas.corpus import ParsedToken
from ambig_miner.schemas.labels import SegmentLabels
from ambig_miner.schemas.name_span import NameSpan
from ambig_miner.schemas.report import SegmentScore
from ambig_miner.services.corpus import group_by_line, iter_conllu, iter_text_lines
from ambig_miner.services.tagger import emit_tagged_corpus, neutralization_score, tag_variants

logger = structlog.get_logger()


def run_tag(config: PipelineConfig) -> dict[str, int]:
    config.require("tag")
    assert config.src
    config.out_dir.mkdir(parents=True, exist_ok=True)
    tagged_out = config.out_dir / "src.tagged"
    outputs = [tagged_out]

    lines = 0
    with open(tagged_out, "w", encoding="utf-8", newline="\n") as f:
        for line in emit_tagged_corpus(
            iter_text_lines(config.src),
            iter_jsonl(config.labels[0], SegmentLabels),
            config.tag_none,
        ):
            f.write(line + "\n")
            lines += 1

    if config.variants:
        variants_out = config.out_dir / "src.variants"
        with open(variants_out, "w", encoding="utf-8", newline="\n") as f:
            for line in iter_text_lines(config.src):
                f.writelines(variant + "\n" for variant in tag_variants(line))
        outputs.append(variants_out)

    logger.info("Tagged source corpus", lines=lines, variants=config.variants)
    write_manifest(
        config,
        "tag",
        inputs=[config.src, config.labels[0]],
        outputs=outputs,
        stats={"lines": lines},
    )
    return {"lines": lines}


ParsedLine = tuple[int, list[ParsedToken]]


def _score_shard(
    include_head: bool,
    transitive: bool,
    shard: list[tuple[ParsedLine, list[NameSpan]]],
) -> list[SegmentScore]:
    return [
        SegmentScore(
            line=line,
            score=neutralization_score(parse, spans, include_head, transitive),
            names=len(spans),
        )
        for (line, parse), spans in shard
    ]


def run_score(config: PipelineConfig) -> dict[str, int]:
    """Score hypothesis translations; lines with names and score 0 are neutral."""
    config.require("score")
    assert config.hyp_conllu and config.spans
    config.out_dir.mkdir(parents=True, exist_ok=True)
    scores_out = config.out_dir / "scores.jsonl"

    parsed = ((line, (line, parse)) for line, parse in enumerate(iter_conllu(config.hyp_conllu)))
    stats = {"lines": 0, "with_names": 0, "neutral": 0, "gendered_terms": 0}

    def counted(scores: Iterable[SegmentScore]) -> Iterator[SegmentScore]:
        for item in scores:
            stats["lines"] += 1
            if item.names:
                stats["with_names"] += 1
                stats["neutral"] += item.score == 0
                stats["gendered_terms"] += item.score
            yield item

    write_jsonl(
        scores_out,
        counted(
            flatten(
                map_shards(
                    partial(_score_shard, config.include_head, config.transitive),
                    group_by_line(parsed, iter_jsonl(config.spans, NameSpan)),
                    config.jobs,
                    config.shard_size,
                    desc="score",
                )
            )
        ),
    )
    logger.info("Scored hypotheses", **stats)
    write_manifest(
        config,
        "score",
        inputs=[config.hyp_conllu, config.spans],
        outputs=[scores_out],
        stats=stats,
    )
    return stats
