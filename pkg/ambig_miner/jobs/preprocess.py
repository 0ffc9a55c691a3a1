from functools import partial

import structlog

from ambig_miner.core.jsonl import dump_record
from ambig_miner.jobs.manifest import write_manifest
from ambig_miner.jobs.runner import flatten, map_shards
from ambig_miner.schemas.config import PipelineConfig, PreprocessConfig
from ambig_miner.schemas.corpus import ParallelSegment
from ambig_miner.services.corpus import iter_parallel_corpus
from ambig_miner.services.preprocess import PreprocessStats, Screened, screen_all, select_screened

logger = structlog.get_logger()


def _screen_shard(cfg: PreprocessConfig, shard: list[ParallelSegment]) -> list[Screened]:
    return screen_all(shard, cfg)


def run_preprocess(config: PipelineConfig) -> PreprocessStats:
    config.require("preprocess")
    assert config.src and config.tgt and config.preprocess
    out = config.out_dir
    out.mkdir(parents=True, exist_ok=True)
    src_out, tgt_out, corpus_out = out / "src.txt", out / "tgt.txt", out / "corpus.jsonl"

    stats = PreprocessStats()
    screened = flatten(
        map_shards(
            partial(_screen_shard, config.preprocess),
            iter_parallel_corpus(config.src, config.tgt),
            config.jobs,
            config.shard_size,
            desc="preprocess",
        )
    )
    with (
        open(src_out, "w", encoding="utf-8", newline="\n") as fs,
        open(tgt_out, "w", encoding="utf-8", newline="\n") as ft,
        open(corpus_out, "w", encoding="utf-8", newline="\n") as fc,
    ):
        for seg in select_screened(screened, stats):
            fs.write(seg.src + "\n")
            ft.write(seg.tgt + "\n")
            fc.write(dump_record(seg) + "\n")

    logger.info("Preprocessed corpus", **stats.model_dump())
    write_manifest(
        config,
        "preprocess",
        inputs=[config.src, config.tgt],
        outputs=[src_out, tgt_out, corpus_out],
        stats=stats.model_dump(),
    )
    return stats
