import json
from pathlib import Path
from typing import Any, Iterable, Iterator, TypeVar

from pydantic import BaseModel, ValidationError

from ambig_miner.core.exceptions import CorpusFormatError

M = TypeVar("M", bound=BaseModel)


def iter_jsonl(path: str | Path, model: type[M]) -> Iterator[M]:
    """Stream records of `model` from a JSONL file, skipping blank lines."""
    with open(path, "r", encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                yield model.model_validate_json(line)
            except ValidationError as e:
                raise CorpusFormatError(
                    f"{path}:{lineno}: invalid {model.__name__} record: "
                    f"{e.errors()[0]['msg']}"
                ) from e


def dump_record(record: BaseModel) -> str:
    return record.model_dump_json(by_alias=True)


def write_jsonl(path: str | Path, records: Iterable[BaseModel]) -> int:
    count = 0
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for record in records:
            f.write(dump_record(record))
            f.write("\n")
            count += 1
    return count


def write_json(path: str | Path, data: dict[str, Any]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(data, f, ensure_ascii=False, indent=2, sort_keys=True)
        f.write("\n")
