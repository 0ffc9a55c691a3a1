from .corpus import (
    attach_ner,
    attach_ner_stream,
    attach_parses,
    attach_parses_stream,
    group_by_line,
    iter_conllu,
    iter_ner_sidecar,
    iter_parallel_corpus,
    load_ner_sidecar,
    load_parallel_corpus,
    parse_conllu,
    read_corpus_jsonl,
    reconstruct_text,
    validate_tree,
    write_corpus_jsonl,
)
from .eval_sampling import (
    SplitMix64,
    agree,
    cohens_kappa,
    draw,
    estimate_rate,
    population_indices,
    read_sheet,
    sample,
    write_sheet,
)
from .gender_extract import (
    collect_terms,
    extract_gendered_terms,
    label_segment,
    locate_in_target,
)
from .name_detect import (
    NameCharPolicy,
    comma_flanked,
    detect_names,
    load_name_list,
    refine_with_ner,
    regex_recall,
    select_spans,
    tc_spans,
    tc_token_ok,
)
from .preprocess import (
    PreprocessStats,
    dedup_exact_pairs,
    langid_of,
    length_ratio_ok,
    pair_digest,
    preprocess,
    screen_all,
    select_screened,
)
from .pronoun import binary_pronouns, has_binary_pronoun
from .stats import (
    ReportCounter,
    build_report,
    name_gender_ratio,
    name_gender_table,
    render_table,
)
from .tagger import (
    emit_tagged_corpus,
    gender_tag,
    neutralization_score,
    strip_tags,
    tag_line,
    tag_variants,
)

__all__ = [
    "attach_ner",
    "attach_ner_stream",
    "attach_parses",
    "attach_parses_stream",
    "group_by_line",
    "iter_conllu",
    "iter_ner_sidecar",
    "iter_parallel_corpus",
    "load_ner_sidecar",
    "load_parallel_corpus",
    "parse_conllu",
    "read_corpus_jsonl",
    "reconstruct_text",
    "validate_tree",
    "write_corpus_jsonl",
    "SplitMix64",
    "agree",
    "cohens_kappa",
    "draw",
    "estimate_rate",
    "population_indices",
    "read_sheet",
    "sample",
    "write_sheet",
    "collect_terms",
    "extract_gendered_terms",
    "label_segment",
    "locate_in_target",
    "NameCharPolicy",
    "comma_flanked",
    "detect_names",
    "load_name_list",
    "refine_with_ner",
    "regex_recall",
    "select_spans",
    "tc_spans",
    "tc_token_ok",
    "PreprocessStats",
    "dedup_exact_pairs",
    "langid_of",
    "length_ratio_ok",
    "pair_digest",
    "preprocess",
    "screen_all",
    "select_screened",
    "binary_pronouns",
    "has_binary_pronoun",
    "ReportCounter",
    "build_report",
    "name_gender_ratio",
    "name_gender_table",
    "render_table",
    "emit_tagged_corpus",
    "gender_tag",
    "neutralization_score",
    "strip_tags",
    "tag_line",
    "tag_variants",
]
