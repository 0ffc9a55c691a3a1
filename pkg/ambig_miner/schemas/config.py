from pathlib import Path

from pydantic import BaseModel, Field, model_validator

from ambig_miner.core.config import settings
from ambig_miner.core.exceptions import ConfigError
from ambig_miner.models.enums import (
    LanguageEnum,
    NameMethodEnum,
    PopulationEnum,
    PronounSideEnum,
    QuestionEnum,
)

# ── Preprocessing ─────────────────────────────────────────────────────────────


class PreprocessConfig(BaseModel):
    max_length_ratio: float = Field(default=settings.MAX_LENGTH_RATIO, ge=1.0)
    expected_src_lang: LanguageEnum = LanguageEnum.EN
    expected_tgt_lang: LanguageEnum | None = None
    min_tokens_for_langid: int = Field(default=settings.MIN_TOKENS_FOR_LANGID, ge=0)
    check_ratio: bool = True
    check_langid: bool = True

    @model_validator(mode="after")
    def known_languages(self) -> "PreprocessConfig":
        if LanguageEnum.UNKNOWN in (self.expected_src_lang, self.expected_tgt_lang):
            raise ValueError("expected languages must be one of en, fr, de, es")
        if self.check_langid and self.expected_tgt_lang is None:
            raise ValueError("language filtering needs a target language")
        return self


# ── Pipeline ──────────────────────────────────────────────────────────────────

STAGE_REQUIREMENTS: dict[str, tuple[str, ...]] = {
    "preprocess": ("src", "tgt"),
    "detect": ("corpus",),
    "extract": ("corpus", "spans"),
    "report": ("labels",),
    "ratio": ("labels", "spans"),
    "sample": ("labels", "corpus"),
    "agree": ("sheet_a", "sheet_b"),
    "tag": ("labels", "src"),
    "score": ("hyp_conllu", "spans"),
    "recall": (),
}


class PipelineConfig(BaseModel):
    # Inputs
    src: Path | None = None
    tgt: Path | None = None
    corpus: Path | None = None
    conllu: Path | None = None
    ner: Path | None = None
    spans: Path | None = None
    labels: list[Path] = Field(default_factory=list)
    dataset_names: list[str] = Field(default_factory=list)
    name_list: Path | None = None
    hyp_conllu: Path | None = None
    sheet_a: Path | None = None
    sheet_b: Path | None = None
    # (dataset name, filled sheet) pairs for report --estimate
    estimates: list[tuple[str, Path]] = Field(default_factory=list)

    # Stage options
    preprocess: PreprocessConfig | None = None
    method: NameMethodEnum = NameMethodEnum.TC
    literal_regex: bool = False
    include_head: bool = False
    transitive: bool = False
    pronoun_side: PronounSideEnum = PronounSideEnum.SRC
    totals: list[int] = Field(default_factory=list)
    names: list[str] = Field(default_factory=list)
    top_k: int | None = Field(default=None, ge=1)
    population: PopulationEnum = PopulationEnum.DETECTED
    question: QuestionEnum = QuestionEnum.NAME
    sample_size: int = Field(default=100, ge=0)
    tag_none: bool = False
    variants: bool = False

    # Execution
    seed: int = settings.SEED
    jobs: int = Field(default=settings.JOBS, ge=1)
    shard_size: int = Field(default=settings.SHARD_SIZE, ge=1)
    out_dir: Path = Path("out")

    def require(self, stage: str) -> None:
        """Raise ConfigError before any work if `stage` lacks an input."""
        missing = [
            f"--{name.replace('_', '-')}"
            for name in STAGE_REQUIREMENTS[stage]
            if not getattr(self, name)
        ]
        if missing:
            raise ConfigError(f"{stage} requires {', '.join(missing)}")
        if stage == "detect" and self.method != NameMethodEnum.TC and not self.ner:
            raise ConfigError(
                f"detect --method {self.method.value.lower()} requires --ner-sidecar"
            )
        if stage == "preprocess" and self.preprocess is None:
            raise ConfigError("preprocess requires a preprocessing configuration")
        if stage == "ratio" and not (self.names or self.top_k):
            raise ConfigError("ratio requires --name or --top")
        if stage == "report":
            if self.totals and len(self.totals) != len(self.labels):
                raise ConfigError("report needs one --total per --labels")
            if len(self.dataset_names) != len(self.labels):
                raise ConfigError("report needs one dataset name per --labels")
            if len(set(self.dataset_names)) != len(self.dataset_names):
                raise ConfigError("dataset names must be distinct")
            unknown = sorted({name for name, _ in self.estimates} - set(self.dataset_names))
            if unknown:
                raise ConfigError(f"--estimate names unknown dataset(s): {', '.join(unknown)}")


# ── Manifest ──────────────────────────────────────────────────────────────────


class ArtifactDigest(BaseModel):
    path: str
    sha256: str


class Manifest(BaseModel):
    tool: str = "ambig_miner"
    version: str
    stage: str
    seed: int
    config: dict[str, object]
    inputs: list[ArtifactDigest]
    outputs: list[ArtifactDigest]
    stats: dict[str, int | float] = Field(default_factory=dict)
