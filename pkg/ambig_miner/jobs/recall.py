import structlog

from ambig_miner.core.jsonl import write_json
from ambig_miner.jobs.manifest import write_manifest
from ambig_miner.schemas.config import PipelineConfig
from ambig_miner.services.name_detect import NAME_LIST_PATH, NameCharPolicy, load_name_list, regex_recall

logger = structlog.get_logger()


def run_recall(config: PipelineConfig) -> float:
    config.require("recall")
    config.out_dir.mkdir(parents=True, exist_ok=True)
    recall_out = config.out_dir / "recall.json"
    name_list = config.name_list or NAME_LIST_PATH
    policy_name = "literal" if config.literal_regex else "default"
    policy = NameCharPolicy.literal() if config.literal_regex else NameCharPolicy.default()

    names = load_name_list(name_list)
    recall = regex_recall(policy, names)
    write_json(recall_out, {"names": len(names), "policy": policy_name, "recall": recall})
    logger.info("Regex recall", names=len(names), policy=policy_name, recall=recall)
    write_manifest(
        config,
        "recall",
        inputs=[name_list],
        outputs=[recall_out],
        stats={"names": len(names), "recall": recall},
    )
    return recall
