import structlog

from ambig_miner.core.jsonl import iter_jsonl, write_json
from ambig_miner.jobs.manifest import write_manifest
from ambig_miner.schemas.config import PipelineConfig
from ambig_miner.schemas.labels import SegmentLabels
from ambig_miner.schemas.name_span import NameSpan
from ambig_miner.schemas.sheet import AgreementStats, AnnotationSheet, SheetItem
from ambig_miner.services.corpus import read_corpus_jsonl
from ambig_miner.services.eval_sampling import (
    agree,
    draw,
    estimate_rate,
    population_indices,
    read_sheet,
    sample,
    write_sheet,
)

logger = structlog.get_logger()

SURFACE_SEPARATOR = " | "


def _fill_items(config: PipelineConfig, wanted: set[int]) -> dict[int, SheetItem]:
    assert config.corpus
    surfaces: dict[int, list[str]] = {}
    if config.spans:
        for span in iter_jsonl(config.spans, NameSpan):
            if span.segment_index in wanted:
                surfaces.setdefault(span.segment_index, []).append(span.surface)
    items: dict[int, SheetItem] = {}
    for seg in read_corpus_jsonl(config.corpus):
        if seg.index in wanted:
            items[seg.index] = SheetItem(
                idx=seg.index,
                src=seg.src,
                tgt=seg.tgt,
                surface=SURFACE_SEPARATOR.join(surfaces.get(seg.index, [])),
            )
    return items


def run_sample(config: PipelineConfig) -> AnnotationSheet:
    config.require("sample")
    config.out_dir.mkdir(parents=True, exist_ok=True)
    labels_path = config.labels[0]

    population = population_indices(iter_jsonl(labels_path, SegmentLabels), config.population)
    wanted = set(draw(population, config.sample_size, config.seed))
    sheet = sample(
        population,
        config.sample_size,
        config.seed,
        question=config.question,
        population_kind=config.population,
        items_by_index=_fill_items(config, wanted),
    )
    sheet_out = config.out_dir / f"{sheet.sample_id}.tsv"
    write_sheet(sheet_out, sheet)
    write_manifest(
        config,
        "sample",
        inputs=[labels_path, config.corpus, config.spans],
        outputs=[sheet_out],
        stats={"population": len(population), "drawn": len(sheet.items)},
    )
    return sheet


def run_agree(config: PipelineConfig) -> AgreementStats:
    config.require("agree")
    assert config.sheet_a and config.sheet_b
    config.out_dir.mkdir(parents=True, exist_ok=True)
    agreement_out = config.out_dir / "agreement.json"

    sheet_a, sheet_b = read_sheet(config.sheet_a), read_sheet(config.sheet_b)
    stats = agree(sheet_a, sheet_b)
    write_json(
        agreement_out,
        {
            **stats.model_dump(mode="json"),
            "rate_a": estimate_rate(sheet_a),
            "rate_b": estimate_rate(sheet_b),
            "sample_id": sheet_a.sample_id,
        },
    )
    logger.info("Annotator agreement", sample_id=sheet_a.sample_id, kappa=stats.kappa, n=stats.n)
    write_manifest(
        config,
        "agree",
        inputs=[config.sheet_a, config.sheet_b],
        outputs=[agreement_out],
        stats={"kappa": stats.kappa, "n": stats.n},
    )
    return stats
