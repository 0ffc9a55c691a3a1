from pathlib import Path

import structlog

from ambig_miner.core.exceptions import ReportError
from ambig_miner.core.jsonl import iter_jsonl, write_json
from ambig_miner.jobs.manifest import write_manifest
from ambig_miner.jobs.runner import map_shards
from ambig_miner.models.enums import PopulationEnum
from ambig_miner.schemas.config import PipelineConfig
from ambig_miner.schemas.labels import SegmentLabels
from ambig_miner.schemas.name_span import NameSpan
from ambig_miner.schemas.report import DatasetReport, NameGenderRatio
from ambig_miner.services.eval_sampling import estimate_rate, read_sheet
from ambig_miner.services.stats import ReportCounter, name_gender_ratio, name_gender_table, render_table

logger = structlog.get_logger()

# report column for a filled sheet, keyed by the population it was drawn from
ESTIMATE_KEYS: dict[PopulationEnum, str] = {
    PopulationEnum.DETECTED: "P",
    PopulationEnum.NON_DETECTED: "FN",
    PopulationEnum.TRG_GENDERED: "Coref",
    PopulationEnum.TRG_GENDERED_NO_PRON: "Coref-P",
    PopulationEnum.TRG_GENDERED_WITH_PRON: "Coref+P",
}


def _count_shard(shard: list[SegmentLabels]) -> ReportCounter:
    return ReportCounter().add_all(shard)


def count_labels(path: Path, jobs: int, shard_size: int) -> ReportCounter:
    counter = ReportCounter()
    for partial_counts in map_shards(
        _count_shard, iter_jsonl(path, SegmentLabels), jobs, shard_size, desc=path.name
    ):
        counter = counter.merge(partial_counts)
    return counter


def _estimates(config: PipelineConfig, dataset: str) -> dict[str, float]:
    estimates: dict[str, float] = {}
    for name, sheet_path in config.estimates:
        if name != dataset:
            continue
        sheet = read_sheet(sheet_path)
        key = ESTIMATE_KEYS[sheet.population]
        if key in estimates:
            raise ReportError(f"{dataset}: more than one {key} sheet")
        estimates[key] = estimate_rate(sheet)
    return estimates


def run_report(config: PipelineConfig) -> dict[str, DatasetReport]:
    config.require("report")
    config.out_dir.mkdir(parents=True, exist_ok=True)
    json_out, table_out = config.out_dir / "report.json", config.out_dir / "report.txt"

    reports: dict[str, DatasetReport] = {}
    for i, (name, path) in enumerate(zip(config.dataset_names, config.labels)):
        counter = count_labels(path, config.jobs, config.shard_size)
        total = config.totals[i] if config.totals else counter.counts.labelled_lines
        report = counter.to_report(total)
        reports[name] = report.model_copy(update={"estimates": _estimates(config, name)})
        logger.info(
            "Built report",
            dataset=name,
            total=total,
            pct_tc=round(report.pct_tc, 2),
            pct_trg_gendered_tc=round(report.pct_trg_gendered_tc, 2),
        )

    write_json(json_out, {name: r.model_dump(mode="json") for name, r in reports.items()})
    table_out.write_text(render_table(reports), encoding="utf-8")
    write_manifest(
        config,
        "report",
        inputs=[*config.labels, *(path for _, path in config.estimates)],
        outputs=[json_out, table_out],
        stats={"datasets": len(reports)},
    )
    return reports


def run_ratio(config: PipelineConfig) -> list[NameGenderRatio]:
    config.require("ratio")
    assert config.spans
    config.out_dir.mkdir(parents=True, exist_ok=True)
    ratio_out = config.out_dir / "ratio.json"
    labels_path = config.labels[0]

    ratios = [
        name_gender_ratio(
            iter_jsonl(labels_path, SegmentLabels), iter_jsonl(config.spans, NameSpan), name
        )
        for name in config.names
    ]
    if config.top_k:
        ratios.extend(
            name_gender_table(
                iter_jsonl(labels_path, SegmentLabels),
                iter_jsonl(config.spans, NameSpan),
                config.top_k,
            )
        )
    write_json(ratio_out, {"ratios": [r.model_dump(mode="json") for r in ratios]})
    for r in ratios:
        logger.info("Name gender ratio", name=r.name, masc=r.masc_count, fem=r.fem_count, ratio=r.ratio)
    write_manifest(
        config,
        "ratio",
        inputs=[labels_path, config.spans],
        outputs=[ratio_out],
        stats={"names": len(ratios)},
    )
    return ratios
